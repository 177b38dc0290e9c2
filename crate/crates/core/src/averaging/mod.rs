//! k-th order averaged functions `f_i` and the auxiliary `y_i`.

pub mod bell;
pub mod formula;
pub mod run;

pub use bell::{bell, bell_coefficient, bell_tuples, binomial, factorial, BellRing, BellTable};
pub use formula::{emit_integrand_formula, AbstractFormula, FormulaTerm};
pub use run::{averaged_function, compute_y, run, AveragingRun, RunOptions, Stage, StageRule};
