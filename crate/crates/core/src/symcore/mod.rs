//! Exact arithmetic kernel.

pub mod params;
pub mod parampoly;
pub mod parse;
pub mod pipoly;
pub mod rational;
pub mod scalar;
pub mod trig;
pub mod xypoly;

pub use params::{natural_cmp, Param};
pub use parampoly::{Monomial, ParamPoly};
pub use parse::{parse_param_expr, parse_poly, ParseError};
pub use pipoly::PiPoly;
pub use rational::{ParseRationalError, Rational};
pub use scalar::Scalar;
pub use trig::{RLaurent, TrigKey, TrigSeries};
pub use xypoly::XYPoly;
