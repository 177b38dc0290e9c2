//! Scaling, polar coordinates and the ε-expansion of dr/dθ.
//!
//! With `x = εX`, `y = εY`, `X = r cos θ`, `Y = r sin θ` the perturbed
//! system becomes `dr/dθ = H1 / (r + H2)` where `H1`, `H2` are polynomials
//! in ε whose coefficients are trigonometric series in `r`, `C`, `S`.

use crate::error::{EngineError, Result};
use crate::symcore::{Param, ParamPoly, Rational, Scalar, TrigKey, TrigSeries, XYPoly, PiPoly};

/// One ε-order of the perturbation: `ε^s (p̃_s, q̃_s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation<T: Scalar> {
    pub dx: XYPoly<T>,
    pub dy: XYPoly<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec<T: Scalar> {
    /// Unperturbed right-hand sides `(P̄, Q̄)`.
    pub p: XYPoly<T>,
    pub q: XYPoly<T>,
    /// `perturbations[s - 1]` multiplies `ε^s`.
    pub perturbations: Vec<Perturbation<T>>,
    pub order: usize,
}

impl<T: Scalar> SystemSpec<T> {
    pub fn new(p: XYPoly<T>, q: XYPoly<T>, perturbations: Vec<Perturbation<T>>, order: usize) -> Result<Self> {
        let sys = SystemSpec { p, q, perturbations, order };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(EngineError::InvalidSystem("order must be at least 1".into()));
        }
        let want = |poly: &XYPoly<T>, i: u32, j: u32, v: i64| poly.coeff(i, j) == ParamPoly::constant(T::from_i64(v));
        let ok = want(&self.p, 0, 0, 0)
            && want(&self.p, 1, 0, 0)
            && want(&self.p, 0, 1, -1)
            && want(&self.q, 0, 0, 0)
            && want(&self.q, 1, 0, 1)
            && want(&self.q, 0, 1, 0);
        if !ok {
            return Err(EngineError::NotCanonicalCenter(format!(
                "P = {}, Q = {}",
                self.p.homogeneous_part(0).add(&self.p.homogeneous_part(1)).to_text(),
                self.q.homogeneous_part(0).add(&self.q.homogeneous_part(1)).to_text()
            )));
        }
        Ok(())
    }

    /// Degree of the unperturbed part.
    pub fn n1(&self) -> u32 {
        self.p.degree().max(self.q.degree())
    }

    /// Largest perturbation degree.
    pub fn perturbation_degree(&self) -> u32 {
        self.perturbations.iter().map(|pt| pt.dx.degree().max(pt.dy.degree())).max().unwrap_or(0)
    }

    /// Degree entering the structural bounds, `max(n1, deg p̃)`.
    pub fn n2(&self) -> u32 {
        self.n1().max(self.perturbation_degree())
    }

    pub fn perturbation(&self, s: usize) -> Option<&Perturbation<T>> {
        self.perturbations.get(s.wrapping_sub(1))
    }

    pub fn params(&self) -> std::collections::BTreeSet<Param> {
        let mut out = self.p.params();
        out.extend(self.q.params());
        for pt in &self.perturbations {
            out.extend(pt.dx.params());
            out.extend(pt.dy.params());
        }
        out
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        SystemSpec {
            p: self.p.substitute(p, rhs),
            q: self.q.substitute(p, rhs),
            perturbations: self
                .perturbations
                .iter()
                .map(|pt| Perturbation { dx: pt.dx.substitute(p, rhs), dy: pt.dy.substitute(p, rhs) })
                .collect(),
            order: self.order,
        }
    }
}

/// `dr/dθ = H1 / (r + H2)` with `h1[e]`, `h2[e]` the ε^e coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarQuotient<T: Scalar> {
    pub h1: Vec<TrigSeries<T>>,
    pub h2: Vec<TrigSeries<T>>,
}

/// Homogeneous `xy`-polynomial evaluated at `(C, S)` times `r^e`.
fn at_cs<T: Scalar>(poly: &XYPoly<T>, r: i16, extra_sin: u16, extra_cos: u16) -> TrigSeries<T> {
    TrigSeries::from_raw_terms(poly.iter().map(|((i, j), c)| {
        (TrigKey::new(0, r, *j as u16 + extra_sin, *i as u16 + extra_cos), PiPoly::from(c.clone()))
    }))
}

fn bump<T: Scalar>(v: &mut Vec<TrigSeries<T>>, e: usize, s: TrigSeries<T>) {
    if v.len() <= e {
        v.resize_with(e + 1, TrigSeries::zero);
    }
    v[e].add_assign_ref(&s);
}

/// Accumulates `ε^e r^{t+1}[pC + qS]` into H1 and `ε^e r^t[qC − pS]` into H2.
fn push_block<T: Scalar>(h1: &mut Vec<TrigSeries<T>>, h2: &mut Vec<TrigSeries<T>>, e: usize, t: u32, p: &XYPoly<T>, q: &XYPoly<T>) {
    let t = t as i16;
    let a = at_cs(p, t + 1, 0, 1).add(&at_cs(q, t + 1, 1, 0));
    let b = at_cs(q, t, 0, 1).sub(&at_cs(p, t, 1, 0));
    bump(h1, e, a);
    bump(h2, e, b);
}

pub fn to_polar_quotient<T: Scalar>(sys: &SystemSpec<T>) -> PolarQuotient<T> {
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for m in 2..=sys.n1() {
        let (pm, qm) = (sys.p.homogeneous_part(m), sys.q.homogeneous_part(m));
        if pm.is_zero() && qm.is_zero() {
            continue;
        }
        push_block(&mut h1, &mut h2, (m - 1) as usize, m, &pm, &qm);
    }
    for (idx, pt) in sys.perturbations.iter().enumerate() {
        let j = idx + 1;
        for t in 0..=pt.dx.degree().max(pt.dy.degree()) {
            let (pt_, qt) = (pt.dx.homogeneous_part(t), pt.dy.homogeneous_part(t));
            if pt_.is_zero() && qt.is_zero() {
                continue;
            }
            push_block(&mut h1, &mut h2, j + t as usize - 1, t, &pt_, &qt);
        }
    }
    for v in [&mut h1, &mut h2] {
        while v.last().is_some_and(TrigSeries::is_zero) {
            v.pop();
        }
    }
    PolarQuotient { h1, h2 }
}

/// The nonvanishing unperturbed term `H1₀ / (r + H2₀)`.
#[derive(Clone, Debug, PartialEq)]
pub struct F0Expression<T: Scalar> {
    pub numerator: TrigSeries<T>,
    /// `H2₀`; the denominator is `r + h2_0`.
    pub h2_0: TrigSeries<T>,
}

impl<T: Scalar> F0Expression<T> {
    pub fn denominator(&self) -> TrigSeries<T> {
        TrigSeries::monomial(0, 1, 0, 0, T::one()).add(&self.h2_0)
    }

    pub fn to_text(&self) -> String {
        format!("({})/({})", self.numerator.to_text(), self.denominator().to_text())
    }

    pub fn into_error(self) -> EngineError {
        EngineError::F0Nonzero { numerator: self.numerator.to_text(), denominator: self.denominator().to_text() }
    }
}

impl<T: Scalar> PolarQuotient<T> {
    fn h1(&self, e: usize) -> TrigSeries<T> {
        self.h1.get(e).cloned().unwrap_or_default()
    }

    fn h2(&self, e: usize) -> TrigSeries<T> {
        self.h2.get(e).cloned().unwrap_or_default()
    }

    pub fn check_f0(&self) -> std::result::Result<(), F0Expression<T>> {
        let n = self.h1(0);
        if n.is_zero() {
            Ok(())
        } else {
            Err(F0Expression { numerator: n, h2_0: self.h2(0) })
        }
    }

    /// `F_1..F_k` from `(H1/r) / (1 + H2/r)` truncated at ε^k.
    pub fn taylor_in_eps(&self, k: usize, n2: u32) -> Result<FSeries<T>> {
        if !self.h2(0).is_zero() {
            return Err(EngineError::DenominatorNotUnit);
        }
        let u: Vec<TrigSeries<T>> = (0..=k).map(|i| self.h1(i).shift_r(-1)).collect();
        let w: Vec<TrigSeries<T>> = (0..=k).map(|i| self.h2(i).shift_r(-1)).collect();
        // F (1 + W) = U, solved order by order; equal to the truncated
        // geometric series U Σ (−W)^h.
        let mut f: Vec<TrigSeries<T>> = vec![TrigSeries::zero()];
        for i in 1..=k {
            let mut fi = u[i].clone();
            for j in 1..i {
                fi.add_mul_scaled(&w[j], &f[i - j], &-T::one());
            }
            f.push(fi);
        }
        f.remove(0);
        Ok(FSeries { order: k, f, n2 })
    }

    /// Float value of `H1 / (r + H2)` at a given ε, with parameters evaluated.
    pub fn eval_rhs<F: Fn(Param) -> T + Copy>(&self, pi: &T, value: F, eps: f64, theta: f64, r: f64) -> f64 {
        let (mut num, mut den) = (0.0, r);
        let mut pw = 1.0;
        for e in 0..self.h1.len().max(self.h2.len()) {
            num += pw * self.h1(e).eval(pi, value, theta, r);
            den += pw * self.h2(e).eval(pi, value, theta, r);
            pw *= eps;
        }
        num / den
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        PolarQuotient {
            h1: self.h1.iter().map(|s| s.substitute(p, rhs)).collect(),
            h2: self.h2.iter().map(|s| s.substitute(p, rhs)).collect(),
        }
    }
}

/// Normal-form coefficients `dr/dθ = Σ ε^i F_i(θ, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSeries<T: Scalar> {
    pub order: usize,
    /// `f[i - 1]` is `F_i`.
    pub f: Vec<TrigSeries<T>>,
    pub n2: u32,
}

impl<T: Scalar> FSeries<T> {
    pub fn get(&self, i: usize) -> &TrigSeries<T> {
        &self.f[i - 1]
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        FSeries { order: self.order, f: self.f.iter().map(|s| s.substitute(p, rhs)).collect(), n2: self.n2 }
    }

    /// `r^{i-1} F_i` is a polynomial in r of degree `≤ i·n2`.
    pub fn check_structure(&self) -> Result<()> {
        for (idx, fi) in self.f.iter().enumerate() {
            let i = idx + 1;
            if fi.is_zero() {
                continue;
            }
            let lo = fi.min_r().unwrap();
            let hi = fi.max_r().unwrap();
            if (lo as i64) < -(i as i64 - 1) || (hi as i64) > (i as i64) * self.n2 as i64 - (i as i64 - 1) || fi.max_theta() > 0 {
                return Err(EngineError::StructuralViolation {
                    order: i,
                    detail: format!("F_{i} has r-exponents in [{lo}, {hi}]"),
                });
            }
        }
        Ok(())
    }
}

/// Full Normalize step: polar quotient, F₀ gate, ε-expansion.
pub fn normalize<T: Scalar>(sys: &SystemSpec<T>) -> Result<FSeries<T>> {
    let pq = to_polar_quotient(sys);
    pq.check_f0().map_err(F0Expression::into_error)?;
    let fs = pq.taylor_in_eps(sys.order, sys.n2())?;
    fs.check_structure()?;
    Ok(fs)
}

pub type SystemSpecQ = SystemSpec<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::parse_poly;

    fn sys(p: &str, q: &str, pert: &[(&str, &str)], k: usize) -> SystemSpec<Rational> {
        let perts = pert
            .iter()
            .map(|(a, b)| Perturbation { dx: parse_poly(a).unwrap(), dy: parse_poly(b).unwrap() })
            .collect();
        SystemSpec::new(parse_poly(p).unwrap(), parse_poly(q).unwrap(), perts, k).unwrap()
    }

    #[test]
    fn rejects_noncanonical_linear_part() {
        let r = SystemSpec::new(parse_poly("y").unwrap(), parse_poly("x").unwrap(), vec![], 1);
        assert!(matches!(r, Err(EngineError::NotCanonicalCenter(_))));
    }

    #[test]
    fn linear_perturbation_quotient() {
        let s = sys("-y", "x", &[("nf_c1*x", "nf_d1*y")], 1);
        let pq = to_polar_quotient(&s);
        let c = ParamPoly::var(Param::intern("nf_c1"));
        let d = ParamPoly::var(Param::intern("nf_d1"));
        let h1 = TrigSeries::from_raw_terms([
            (TrigKey::new(0, 2, 0, 2), PiPoly::from(c.clone())),
            (TrigKey::new(0, 2, 2, 0), PiPoly::from(d.clone())),
        ]);
        let h2 = TrigSeries::from_raw_terms([(TrigKey::new(0, 1, 1, 1), PiPoly::from(d.sub(&c)))]);
        assert_eq!(pq.h1, vec![TrigSeries::zero(), h1]);
        assert_eq!(pq.h2, vec![TrigSeries::zero(), h2]);
    }

    #[test]
    fn zero_system() {
        let s = sys("-y", "x", &[], 3);
        let fs = normalize(&s).unwrap();
        assert!(fs.f.iter().all(TrigSeries::is_zero));
    }

    #[test]
    fn constant_perturbation_fires_gate() {
        let s = sys("-y + x^2", "x", &[("nf_k", "0")], 2);
        assert!(matches!(normalize(&s), Err(EngineError::F0Nonzero { .. })));
    }
}
