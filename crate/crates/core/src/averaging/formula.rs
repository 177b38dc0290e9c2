//! Symbolic integrands `𝔽_k` over abstract `F_j`, `y_j` and `∂/∂z`.

use num_traits::One;

use super::bell::{bell_coefficient, bell_tuples, factorial};
use crate::symcore::{Rational, Scalar, TrigSeries};

/// `coeff · ∂^deriv F_f · Π y_j^{y_powers[j-1]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub coeff: Rational,
    pub f_index: u32,
    pub deriv: u32,
    pub y_powers: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractFormula {
    pub k: u32,
    pub terms: Vec<FormulaTerm>,
}

/// `k!(F_k + Σ_{l<k} Σ_{m≤l} (1/l!) ∂^m F_{k-l} B_{l,m}(y_1, …))` expanded
/// over the Bell index tuples.
pub fn emit_integrand_formula(k: u32) -> AbstractFormula {
    assert!(k >= 1, "order must be at least 1");
    let kf = factorial(k);
    let mut terms = vec![FormulaTerm { coeff: kf.clone(), f_index: k, deriv: 0, y_powers: vec![] }];
    for l in 1..k {
        let scale = &kf / &factorial(l);
        for m in 1..=l {
            for b in bell_tuples(l, m) {
                let mut y_powers = b.clone();
                while y_powers.last() == Some(&0) {
                    y_powers.pop();
                }
                terms.push(FormulaTerm { coeff: &scale * &bell_coefficient(l, &b), f_index: k - l, deriv: m, y_powers });
            }
        }
    }
    AbstractFormula { k, terms }
}

impl AbstractFormula {
    /// Evaluates the formula with concrete `F_j` and `y_j`: this is the
    /// tuple-sum form of the recursion.
    pub fn instantiate<T: Scalar>(&self, f: &[TrigSeries<T>], y: &[TrigSeries<T>]) -> TrigSeries<T> {
        let mut acc = TrigSeries::zero();
        for t in &self.terms {
            let mut prod = f[t.f_index as usize - 1].diff_r(t.deriv);
            for (j, &bj) in t.y_powers.iter().enumerate() {
                for _ in 0..bj {
                    prod = prod.mul(&y[j]);
                }
            }
            acc.add_scaled(&prod, &T::from_rational(&t.coeff));
        }
        acc
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let mut parts: Vec<String> = Vec::new();
            if t.coeff != Rational::one() {
                parts.push(if latex { latex_rational(&t.coeff) } else { t.coeff.to_string() });
            }
            parts.push(match (latex, t.deriv) {
                (false, 0) => format!("F_{}(s,z)", t.f_index),
                (false, 1) => format!("diff(F_{}(s,z), z)", t.f_index),
                (false, d) => format!("diff(F_{}(s,z), z${d})", t.f_index),
                (true, 0) => format!("F_{{{}}}(s,z)", t.f_index),
                (true, 1) => format!("\\frac{{\\partial F_{{{}}}(s,z)}}{{\\partial z}}", t.f_index),
                (true, d) => format!("\\frac{{\\partial^{{{d}}} F_{{{}}}(s,z)}}{{\\partial z^{{{d}}}}}", t.f_index),
            });
            for (j, &b) in t.y_powers.iter().enumerate() {
                let j = j + 1;
                match (latex, b) {
                    (_, 0) => {}
                    (false, 1) => parts.push(format!("y_{j}(s,z)")),
                    (false, b) => parts.push(format!("y_{j}(s,z)^{b}")),
                    (true, 1) => parts.push(format!("y_{{{j}}}(s,z)")),
                    (true, b) => parts.push(format!("y_{{{j}}}(s,z)^{{{b}}}")),
                }
            }
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&parts.join(if latex { " " } else { "*" }));
        }
        out
    }
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}
