//! Closed-form `∫₀^θ` of trigonometric series and evaluation at θ = 2π.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::Zero;

use crate::symcore::{PiPoly, RLaurent, Rational, Scalar, TrigKey, TrigSeries};

/// `∫₀^θ s^i sin^j s cos^k s ds` as a flat list of r-free terms.
pub type MonomialIntegral = Arc<Vec<(TrigKey, Rational)>>;

type Memo = RwLock<HashMap<(u16, u16, u16), MonomialIntegral>>;

static MEMO: LazyLock<Memo> = LazyLock::new(Default::default);
static MEMO_2PI: LazyLock<RwLock<HashMap<(u16, u16, u16), Arc<Vec<(usize, Rational)>>>>> =
    LazyLock::new(Default::default);

type Q = TrigSeries<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn lookup(i: u16, j: u16, k: u16) -> MonomialIntegral {
    if let Some(v) = MEMO.read().expect("integral memo poisoned").get(&(i, j, k)) {
        return v.clone();
    }
    let series = compute(i, j, k);
    let flat: MonomialIntegral = Arc::new(series.iter().map(|(key, c)| (*key, c.as_param().unwrap().constant_term())).collect());
    MEMO.write().expect("integral memo poisoned").entry((i, j, k)).or_insert(flat).clone()
}

fn as_series(v: &MonomialIntegral) -> Q {
    Q::from_raw_terms(v.iter().map(|(k, c)| (*k, PiPoly::constant(c.clone()))))
}

fn m(i: u16, j: u16, k: u16) -> Q {
    as_series(&lookup(i, j, k))
}

fn compute(i: u16, j: u16, k: u16) -> Q {
    if k >= 1 {
        // d/ds[s^i S^{j+1} C^{k-1}] integrated over [0, θ]; the boundary
        // term at 0 always vanishes because S(0) = 0.
        let mut acc = Q::monomial(i, 0, j + 1, k - 1, q(1));
        if i > 0 {
            acc.add_scaled(&m(i - 1, j + 1, k - 1), &q(-(i as i64)));
        }
        if k >= 2 {
            acc.add_scaled(&m(i, j + 2, k - 2), &q(k as i64 - 1));
        }
        return acc.scale(&Rational::new(1, j as i64 + 1));
    }
    if j == 0 {
        return Q::monomial(i + 1, 0, 0, 0, Rational::new(1, i as i64 + 1));
    }
    let (ii, jj) = (i as i64, j as i64);
    let mut acc = Q::monomial(i, 0, j - 1, 1, q(-jj));
    if i > 0 {
        acc.add_assign_ref(&Q::monomial(i - 1, 0, j, 0, q(ii)));
    }
    if j >= 2 {
        acc.add_scaled(&m(i, j - 2, 0), &q(jj * (jj - 1)));
    }
    if i >= 2 {
        acc.add_scaled(&m(i - 2, j, 0), &q(-ii * (ii - 1)));
    }
    if i == 0 && j == 1 {
        // lower-limit contribution of -s^i S^{j-1} C at s = 0
        acc.add_assign_ref(&Q::one());
    }
    acc.scale(&Rational::new(1, jj * jj))
}

/// `M_{i,j,k}(θ)` with exact rational coefficients; vanishes at θ = 0.
pub fn integrate_monomial(i: u16, j: u16, k: u16) -> TrigSeries<Rational> {
    m(i, j, k)
}

/// Termwise `∫₀^θ`, treating r and the coefficients as constants.
pub fn integrate<T: Scalar>(a: &TrigSeries<T>) -> TrigSeries<T> {
    let mut terms: Vec<(TrigKey, PiPoly<T>)> = Vec::new();
    for (key, c) in a.iter() {
        for (mk, qv) in lookup(key.theta, key.sin, key.cos).iter() {
            terms.push((TrigKey { r: key.r, ..*mk }, c.scale(&T::from_rational(qv))));
        }
    }
    TrigSeries::from_raw_terms(terms)
}

/// Substitutes θ = 2π: sin terms vanish, cos → 1, θ^a → (2π)^a.
pub fn eval_at_2pi<T: Scalar>(a: &TrigSeries<T>) -> RLaurent<T> {
    let mut out: RLaurent<T> = RLaurent::new();
    for (key, c) in a.iter() {
        if key.sin > 0 {
            continue;
        }
        let two = T::from_i64(1i64 << key.theta);
        let v = c.shift_pi(key.theta as usize).scale(&two);
        out.entry(key.r).or_default().add_assign_ref(&v);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn value_2pi(i: u16, j: u16, k: u16) -> Arc<Vec<(usize, Rational)>> {
    if let Some(v) = MEMO_2PI.read().expect("integral memo poisoned").get(&(i, j, k)) {
        return v.clone();
    }
    let mut acc: HashMap<usize, Rational> = HashMap::new();
    for (key, c) in lookup(i, j, k).iter() {
        if key.sin > 0 {
            continue;
        }
        let e = acc.entry(key.theta as usize).or_insert_with(Rational::zero);
        *e += &(c * &Rational::from_integer(1i64 << key.theta));
    }
    let mut v: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|(p, _)| *p);
    let v = Arc::new(v);
    MEMO_2PI.write().expect("integral memo poisoned").entry((i, j, k)).or_insert(v).clone()
}

/// `∫₀^{2π} a dθ`, equal to `eval_at_2pi(integrate(a))` without building
/// the antiderivative.
pub fn integrate_full_period<T: Scalar>(a: &TrigSeries<T>) -> RLaurent<T> {
    let mut out: RLaurent<T> = RLaurent::new();
    for (key, c) in a.iter() {
        for (pk, qv) in value_2pi(key.theta, key.sin, key.cos).iter() {
            let v = c.shift_pi(*pk).scale(&T::from_rational(qv));
            out.entry(key.r).or_default().add_assign_ref(&v);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Float value of `M_{i,j,k}(θ)`.
pub fn eval_monomial_integral(i: u16, j: u16, k: u16, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    lookup(i, j, k)
        .iter()
        .map(|(key, v)| v.to_f64() * theta.powi(key.theta as i32) * s.powi(key.sin as i32) * c.powi(key.cos as i32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &Q, theta: f64) -> f64 {
        s.to_f64().eval_numeric(theta, 1.0)
    }

    #[test]
    fn small_cases() {
        let t = Q::monomial(1, 0, 0, 0, q(1));
        assert_eq!(integrate_monomial(0, 0, 0), t);
        let one_minus_cos = Q::one().sub(&Q::monomial(0, 0, 0, 1, q(1)));
        assert_eq!(integrate_monomial(0, 1, 0), one_minus_cos);
        let e = Q::monomial(0, 0, 1, 0, q(1)).sub(&Q::monomial(1, 0, 0, 1, q(1)));
        assert_eq!(integrate_monomial(1, 1, 0), e);
        let half = Rational::new(1, 2);
        let e = Q::monomial(1, 0, 0, 0, half.clone()).sub(&Q::monomial(0, 0, 1, 1, half));
        assert_eq!(integrate_monomial(0, 2, 0), e);
    }

    #[test]
    fn vanishes_at_zero() {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..3 {
                    assert!(integrate_monomial(i, j, k).at_theta_zero().is_empty(), "{i} {j} {k}");
                }
            }
        }
    }

    #[test]
    fn full_period_matches_eval() {
        let a = Q::monomial(2, 1, 2, 1, q(3)).add(&Q::monomial(1, -1, 4, 0, q(-2)));
        assert_eq!(integrate_full_period(&a), eval_at_2pi(&integrate(&a)));
        assert!((num(&integrate_monomial(0, 2, 0), 2.0 * std::f64::consts::PI) - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn eval_examples() {
        let a = Q::monomial(1, 1, 1, 0, q(1));
        assert!(eval_at_2pi(&a).is_empty());
        let b = eval_at_2pi(&Q::monomial(1, 1, 0, 0, q(1)));
        assert_eq!(b[&1].to_text(), "2*pi");
        let c = eval_at_2pi(&Q::monomial(2, 0, 0, 1, q(1)));
        assert_eq!(c[&0].to_text(), "4*pi^2");
    }
}
