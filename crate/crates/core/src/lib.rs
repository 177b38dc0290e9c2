//! Exact symbolic averaging of planar polynomial perturbations of a center.
//!
//! The engine is generic over the coefficient scalar; exact work uses
//! [`Rational`], while `f64`/`f32` instantiations serve numerical checks.

pub mod analysis;
pub mod averaging;
pub mod error;
pub mod fixtures;
pub mod normalform;
pub mod symcore;
pub mod trigcalc;
pub mod verify;

pub use error::{EngineError, Result};
pub use symcore::{Param, Rational, Scalar};

pub type ParamPolyQ = symcore::ParamPoly<Rational>;
pub type PiPolyQ = symcore::PiPoly<Rational>;
pub type TrigSeriesQ = symcore::TrigSeries<Rational>;
pub type XYPolyQ = symcore::XYPoly<Rational>;
pub type FSeriesQ = normalform::FSeries<Rational>;
pub type AveragedFunctionQ = analysis::AveragedFunction<Rational>;
pub type AveragingRunQ = averaging::AveragingRun<Rational>;
pub use normalform::SystemSpecQ;

pub type ParamPolyF64 = symcore::ParamPoly<f64>;
pub type TrigSeriesF64 = symcore::TrigSeries<f64>;
pub type SystemSpecF64 = normalform::SystemSpec<f64>;
pub type AveragedFunctionF64 = analysis::AveragedFunction<f64>;

pub type TrigSeriesF32 = symcore::TrigSeries<f32>;
pub type SystemSpecF32 = normalform::SystemSpec<f32>;
