//! Numerical check of predicted periodic solutions: integrate
//! `dr/dθ = H1/(r + H2)` over one period and locate fixed points of the
//! return map.

use std::collections::HashMap;
use std::f64::consts::PI;

use thiserror::Error;

use crate::analysis::AveragedFunction;
use crate::normalform::{to_polar_quotient, SystemSpec};
use crate::symcore::{Param, ParamPoly, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("integration left the domain at theta = {theta:.6} (r = {r:.6e})")]
    BlowUp { theta: f64, r: f64 },
    #[error("displacement has the same sign at both ends of [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("step halving did not reach the tolerance after {steps} steps")]
    NoConvergence { steps: usize },
}

/// One folded term `ε^e r^a sin^s cos^c` with its float coefficient.
#[derive(Clone, Copy, Debug)]
struct Term {
    e: usize,
    r: i32,
    sin: i32,
    cos: i32,
    c: f64,
}

/// The instantiated right-hand side at a fixed ε.
#[derive(Clone, Debug)]
pub struct NumericSystem {
    pub eps: f64,
    pub r_min: f64,
    pub r_max: f64,
    /// Agreement required between successive step halvings.
    pub tol: f64,
    num: Vec<Term>,
    den: Vec<Term>,
    prediction: Option<AveragedFunction<f64>>,
}

fn fold(series: &[crate::symcore::TrigSeries<Rational>]) -> Vec<Term> {
    let mut out = Vec::new();
    for (e, s) in series.iter().enumerate() {
        for (key, c) in s.iter() {
            let c = c.as_param().and_then(ParamPoly::as_constant).expect("instantiated quotient has constant coefficients");
            out.push(Term { e, r: key.r as i32, sin: key.sin as i32, cos: key.cos as i32, c: c.to_f64() });
        }
    }
    out
}

fn eval_terms(terms: &[Term], eps: f64, s: f64, c: f64, r: f64) -> f64 {
    terms.iter().map(|t| t.c * eps.powi(t.e as i32) * r.powi(t.r) * s.powi(t.sin) * c.powi(t.cos)).sum()
}

impl NumericSystem {
    /// Substitutes `values` (missing parameters are 0) and folds the exact
    /// polar quotient to floats.
    pub fn new(sys: &SystemSpec<Rational>, values: &HashMap<Param, Rational>, eps: f64) -> Self {
        let mut inst = sys.clone();
        for p in sys.params() {
            let v = values.get(&p).cloned().unwrap_or_else(|| Rational::from_integer(0));
            inst = inst.substitute(p, &ParamPoly::constant(v));
        }
        let pq = to_polar_quotient(&inst);
        NumericSystem {
            eps,
            r_min: 1e-9,
            r_max: 1e6,
            tol: 1e-12,
            num: fold(&pq.h1),
            den: fold(&pq.h2),
            prediction: None,
        }
    }

    /// Attaches `f_k`, instantiated at the same values, as the source of
    /// predicted zeros.
    pub fn with_prediction(mut self, f: &AveragedFunction<Rational>, values: &HashMap<Param, Rational>) -> Self {
        let mut g = f.clone();
        for p in f.params() {
            let v = values.get(&p).cloned().unwrap_or_else(|| Rational::from_integer(0));
            g = g.substitute(p, &ParamPoly::constant(v));
        }
        self.prediction = Some(AveragedFunction {
            order: g.order,
            nu: g.nu,
            fbar: g.fbar.iter().map(|(j, c)| (*j, c.to_f64())).collect(),
            n: g.n,
            pi_degree: g.pi_degree,
        });
        self
    }

    pub fn rhs(&self, theta: f64, r: f64) -> Result<f64, VerifyError> {
        let (s, c) = theta.sin_cos();
        let den = r + eval_terms(&self.den, self.eps, s, c, r);
        if den.abs() < 1e-8 || !den.is_finite() {
            return Err(VerifyError::BlowUp { theta, r });
        }
        Ok(eval_terms(&self.num, self.eps, s, c, r) / den)
    }

    fn rk4(&self, r0: f64, steps: usize) -> Result<f64, VerifyError> {
        let h = 2.0 * PI / steps as f64;
        let mut r = r0;
        for n in 0..steps {
            let t = n as f64 * h;
            let k1 = self.rhs(t, r)?;
            let k2 = self.rhs(t + h / 2.0, r + h / 2.0 * k1)?;
            let k3 = self.rhs(t + h / 2.0, r + h / 2.0 * k2)?;
            let k4 = self.rhs(t + h, r + h * k3)?;
            r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if !(r > self.r_min && r < self.r_max) {
                return Err(VerifyError::BlowUp { theta: t + h, r });
            }
        }
        Ok(r)
    }

    /// Predicted value of `f_k` at `r`, if attached.
    pub fn predicted(&self, r: f64) -> Option<f64> {
        self.prediction.as_ref().map(|f| f.eval(&PI, |_| 0.0, r))
    }
}

/// `r(2π)` for `r(0) = r0`, halving the RK4 step until two successive
/// results agree to `ns.tol`.
pub fn poincare_return(ns: &NumericSystem, r0: f64) -> Result<f64, VerifyError> {
    if !(r0 > ns.r_min && r0 < ns.r_max) {
        return Err(VerifyError::BlowUp { theta: 0.0, r: r0 });
    }
    let mut steps = 32;
    let mut prev = ns.rk4(r0, steps)?;
    while steps < 1 << 20 {
        steps *= 2;
        let cur = ns.rk4(r0, steps)?;
        if (cur - prev).abs() < ns.tol {
            // Richardson extrapolation for a fourth-order method
            return Ok(cur + (cur - prev) / 15.0);
        }
        prev = cur;
    }
    Err(VerifyError::NoConvergence { steps })
}

pub fn displacement(ns: &NumericSystem, r0: f64) -> Result<f64, VerifyError> {
    Ok(poincare_return(ns, r0)? - r0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleWitness {
    /// Zero of the attached `f_k` in the bracket, or NaN without one.
    pub rbar_predicted: f64,
    pub r_fixed: f64,
    pub eps: f64,
    /// `|d(r_fixed)|`.
    pub residual: f64,
}

fn bisect<F: FnMut(f64) -> Result<f64, VerifyError>>(mut g: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64), VerifyError> {
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (g(a)?, g(b)?);
    if ga == 0.0 && gb == 0.0 {
        return Err(VerifyError::NoSignChange { lo, hi });
    }
    if ga == 0.0 {
        return Ok((a, 0.0));
    }
    if gb == 0.0 {
        return Ok((b, 0.0));
    }
    if ga.signum() == gb.signum() {
        return Err(VerifyError::NoSignChange { lo, hi });
    }
    let mut sa = ga.signum();
    let (mut m, mut gm) = (a, ga);
    for _ in 0..200 {
        m = 0.5 * (a + b);
        gm = g(m)?;
        if gm == 0.0 || (b - a) < tol * m.abs().max(1.0) {
            break;
        }
        if gm.signum() == sa {
            a = m;
            sa = gm.signum();
        } else {
            b = m;
        }
    }
    Ok((m, gm.abs()))
}

/// Bisection on the displacement until the bracket is narrower than
/// `1e-12` (relative).
pub fn find_fixed_point(ns: &NumericSystem, bracket: (f64, f64)) -> Result<CycleWitness, VerifyError> {
    let (r_fixed, residual) = bisect(|r| displacement(ns, r), bracket.0, bracket.1, 1e-12)?;
    let rbar_predicted = match &ns.prediction {
        Some(_) => bisect(|r| Ok(ns.predicted(r).unwrap()), bracket.0, bracket.1, 1e-14).map(|(r, _)| r).unwrap_or(f64::NAN),
        None => f64::NAN,
    };
    Ok(CycleWitness { rbar_predicted, r_fixed, eps: ns.eps, residual })
}

/// [`find_fixed_point`] for each ε, run concurrently.
pub fn eps_ladder(
    sys: &SystemSpec<Rational>,
    values: &HashMap<Param, Rational>,
    prediction: Option<&AveragedFunction<Rational>>,
    eps: &[f64],
    bracket: (f64, f64),
) -> Vec<Result<CycleWitness, VerifyError>> {
    let systems: Vec<NumericSystem> = eps
        .iter()
        .map(|&e| {
            let ns = NumericSystem::new(sys, values, e);
            match prediction {
                Some(f) => ns.with_prediction(f, values),
                None => ns,
            }
        })
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = systems.iter().map(|ns| scope.spawn(move || find_fixed_point(ns, bracket))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::collins;

    fn f3_values() -> HashMap<Param, Rational> {
        HashMap::from([
            (Param::intern("beta_1_7"), Rational::from_integer(1)),
            (Param::intern("alpha_3_1"), Rational::new(-1, 4)),
        ])
    }

    #[test]
    fn identity_at_zero_eps() {
        let ns = NumericSystem::new(&collins(3), &f3_values(), 0.0);
        for r0 in [0.2, 1.0, 3.0] {
            assert!((poincare_return(&ns, r0).unwrap() - r0).abs() < 1e-10);
        }
        assert!(matches!(find_fixed_point(&ns, (0.5, 1.5)), Err(VerifyError::NoSignChange { .. })));
    }

    #[test]
    fn displacement_sign_follows_f3() {
        let ns = NumericSystem::new(&collins(3), &f3_values(), 0.01);
        assert!(displacement(&ns, 0.2).unwrap() < 0.0);
        assert!(displacement(&ns, 0.9).unwrap() < 0.0);
        assert!(displacement(&ns, 1.1).unwrap() > 0.0);
        assert!(matches!(find_fixed_point(&ns, (0.2, 0.6)), Err(VerifyError::NoSignChange { .. })));
    }
}
