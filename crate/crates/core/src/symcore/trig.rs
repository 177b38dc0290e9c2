//! Finite sums of `coef · θ^a · r^e · sin^b θ · cos^c θ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;


use super::params::Param;
use super::parampoly::ParamPoly;
use super::pipoly::PiPoly;
use super::rational::Rational;
use super::scalar::Scalar;

/// Exponent tuple of a trigonometric monomial. Field order gives the
/// canonical term order `(theta, r, sin, cos)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TrigKey {
    pub theta: u16,
    pub r: i16,
    pub sin: u16,
    pub cos: u16,
}

impl TrigKey {
    pub const ONE: TrigKey = TrigKey { theta: 0, r: 0, sin: 0, cos: 0 };

    pub fn new(theta: u16, r: i16, sin: u16, cos: u16) -> Self {
        TrigKey { theta, r, sin, cos }
    }

    fn mul(self, o: TrigKey) -> TrigKey {
        TrigKey {
            theta: self.theta + o.theta,
            r: self.r + o.r,
            sin: self.sin + o.sin,
            cos: self.cos + o.cos,
        }
    }
}

/// Canonical carrier: no repeated keys, no zero coefficients, `cos ≤ 1`.
#[derive(Clone, PartialEq)]
pub struct TrigSeries<T> {
    terms: BTreeMap<TrigKey, PiPoly<T>>,
}

impl<T: Scalar> Default for TrigSeries<T> {
    fn default() -> Self {
        Self::zero()
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

impl<T: Scalar> TrigSeries<T> {
    pub fn zero() -> Self {
        TrigSeries { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(PiPoly::one())
    }

    pub fn constant(c: PiPoly<T>) -> Self {
        Self::term(TrigKey::ONE, c)
    }

    pub fn from_param(c: ParamPoly<T>) -> Self {
        Self::constant(c.into())
    }

    /// Single term; reduced on the fly when `key.cos > 1`.
    pub fn term(key: TrigKey, c: PiPoly<T>) -> Self {
        let mut out = Self::zero();
        out.add_raw(key, &c, &T::one());
        out
    }

    /// `c · r^e · sin^b · cos^c` with a rational coefficient.
    pub fn monomial(theta: u16, r: i16, sin: u16, cos: u16, c: T) -> Self {
        Self::term(TrigKey::new(theta, r, sin, cos), PiPoly::constant(c))
    }

    /// Builds a series from arbitrary terms, reducing cosine powers.
    pub fn from_raw_terms(terms: impl IntoIterator<Item = (TrigKey, PiPoly<T>)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_raw(k, &c, &T::one());
        }
        out
    }

    /// Adds `s · c · key`, rewriting `cos² = 1 − sin²` as needed.
    fn add_raw(&mut self, key: TrigKey, c: &PiPoly<T>, s: &T) {
        if key.cos <= 1 {
            self.add_canonical(key, c, s);
            return;
        }
        let h = (key.cos / 2) as u32;
        for k in 0..=h {
            let b = binom(h, k);
            let sign = if k % 2 == 0 { b } else { -b };
            let mut f = T::from_i64(sign);
            f *= s;
            let nk = TrigKey { sin: key.sin + 2 * k as u16, cos: key.cos % 2, ..key };
            self.add_canonical(nk, c, &f);
        }
    }

    fn add_canonical(&mut self, key: TrigKey, c: &PiPoly<T>, s: &T) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_default();
        e.add_scaled(c, s);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TrigKey, &PiPoly<T>)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &TrigKey) -> Option<&PiPoly<T>> {
        self.terms.get(key)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(|k| k.cos <= 1)
    }

    /// Total number of parameter monomials across all coefficients.
    pub fn weight(&self) -> usize {
        self.terms.values().map(PiPoly::total_terms).sum()
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_canonical(*k, c, &T::one());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        self.add_scaled(other, &-T::one());
    }

    pub fn add_scaled(&mut self, other: &Self, s: &T) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_canonical(*k, c, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    pub fn neg(&self) -> Self {
        TrigSeries { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TrigSeries { terms: self.terms.iter().map(|(k, c)| (*k, c.scale(s))).collect() }
    }

    pub fn mul_param(&self, p: &ParamPoly<T>) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_canonical(*k, &c.mul_param(p), &T::one());
        }
        out
    }

    /// Multiplies every term by `r^e`.
    pub fn shift_r(&self, e: i16) -> Self {
        TrigSeries {
            terms: self.terms.iter().map(|(k, c)| (TrigKey { r: k.r + e, ..*k }, c.clone())).collect(),
        }
    }

    /// `self += s · a · b`.
    pub fn add_mul_scaled(&mut self, a: &Self, b: &Self, s: &T) {
        if a.is_zero() || b.is_zero() || s.is_zero() {
            return;
        }
        // Products land on cos exponents 0..=2; the cos² bucket is folded
        // back once at the end rather than per product.
        let mut raw: BTreeMap<TrigKey, PiPoly<T>> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka.mul(*kb);
                let e = raw.entry(k).or_default();
                e.add_mul_scaled(ca, cb, s);
            }
        }
        for (k, c) in raw {
            self.add_raw(k, &c, &T::one());
        }
    }

    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        self.add_mul_scaled(a, b, &T::one());
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul(self, other);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical form of a series that may carry `cos ≥ 2` terms.
    pub fn reduce_cos(&self) -> Self {
        Self::from_raw_terms(self.terms.iter().map(|(k, c)| (*k, c.clone())))
    }

    /// `m`-th partial derivative in `r`.
    pub fn diff_r(&self, m: u32) -> Self {
        if m == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let mut f: i64 = 1;
            for j in 0..m as i64 {
                f *= k.r as i64 - j;
            }
            if f == 0 {
                continue;
            }
            let nk = TrigKey { r: k.r - m as i16, ..*k };
            out.add_canonical(nk, c, &T::from_i64(f));
        }
        out
    }

    /// Total derivative in θ.
    pub fn diff_theta(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.theta > 0 {
                out.add_raw(TrigKey { theta: k.theta - 1, ..*k }, c, &T::from_i64(k.theta as i64));
            }
            if k.sin > 0 {
                out.add_raw(TrigKey { sin: k.sin - 1, cos: k.cos + 1, ..*k }, c, &T::from_i64(k.sin as i64));
            }
            if k.cos > 0 {
                out.add_raw(TrigKey { sin: k.sin + 1, cos: k.cos - 1, ..*k }, c, &T::from_i64(-(k.cos as i64)));
            }
        }
        out
    }

    pub fn max_theta(&self) -> u16 {
        self.terms.keys().map(|k| k.theta).max().unwrap_or(0)
    }

    pub fn min_r(&self) -> Option<i16> {
        self.terms.keys().map(|k| k.r).min()
    }

    pub fn max_r(&self) -> Option<i16> {
        self.terms.keys().map(|k| k.r).max()
    }

    pub fn max_pi_degree(&self) -> usize {
        self.terms.values().map(PiPoly::degree).max().unwrap_or(0)
    }

    /// Value at θ = 0, as a Laurent polynomial in r.
    pub fn at_theta_zero(&self) -> BTreeMap<i16, PiPoly<T>> {
        let mut out: BTreeMap<i16, PiPoly<T>> = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.theta == 0 && k.sin == 0 {
                out.entry(k.r).or_default().add_assign_ref(c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.values().flat_map(|c| c.params()).collect()
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        let mut cache = vec![ParamPoly::one()];
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if c.contains(p) {
                out.add_canonical(*k, &c.substitute_with_cache(p, rhs, &mut cache), &T::one());
            } else {
                out.terms.insert(*k, c.clone());
            }
        }
        out
    }

    pub fn eval_partial(&self, values: &HashMap<Param, T>) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_canonical(*k, &c.eval_partial(values), &T::one());
        }
        out
    }

    pub fn map_coeffs<U: Scalar, F: Fn(&T) -> U + Copy>(&self, f: F) -> TrigSeries<U> {
        let mut out = TrigSeries::zero();
        for (k, c) in &self.terms {
            out.add_canonical(*k, &c.map_coeffs(f), &U::one());
        }
        out
    }

    /// Evaluates coefficients first, then the trigonometric monomials.
    pub fn eval<F: Fn(Param) -> T + Copy>(&self, pi: &T, value: F, theta: f64, r: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let mut acc = 0.0;
        for (k, coef) in &self.terms {
            let v = coef.eval(pi, value).to_f64();
            acc += v
                * theta.powi(k.theta as i32)
                * r.powi(k.r as i32)
                * s.powi(k.sin as i32)
                * c.powi(k.cos as i32);
        }
        acc
    }

    pub fn to_text(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

impl TrigSeries<Rational> {
    pub fn to_f64(&self) -> TrigSeries<f64> {
        self.map_coeffs(|c| c.to_f64())
    }
}

/// A rational-coefficient series without parameters, evaluated fast.
impl TrigSeries<f64> {
    pub fn eval_numeric(&self, theta: f64, r: f64) -> f64 {
        let pi = std::f64::consts::PI;
        self.eval(&pi, |_| 0.0, theta, r)
    }
}

fn render<T: Scalar>(s: &TrigSeries<T>, latex: bool) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    // higher r powers first reads closer to the usual hand notation
    let mut keys: Vec<&TrigKey> = s.terms.keys().collect();
    keys.sort_by(|a, b| (b.r, a.theta, a.sin, a.cos).cmp(&(a.r, b.theta, b.sin, b.cos)));
    for (i, k) in keys.into_iter().enumerate() {
        let c = &s.terms[k];
        let mut factors: Vec<String> = Vec::new();
        let push = |base: &str, e: i64, v: &mut Vec<String>| match e {
            0 => {}
            1 => v.push(base.to_string()),
            _ if latex => v.push(format!("{base}^{{{e}}}")),
            _ => v.push(format!("{base}^{e}")),
        };
        let (th, sn, cs) = if latex { ("\\theta", "S", "C") } else { ("theta", "S", "C") };
        push(th, k.theta as i64, &mut factors);
        push("r", k.r as i64, &mut factors);
        push(sn, k.sin as i64, &mut factors);
        push(cs, k.cos as i64, &mut factors);
        let body = if latex { c.to_latex() } else { c.to_text() };
        let single = c.coeffs().iter().filter(|p| !p.is_zero()).count() == 1
            && c.coeffs().iter().all(|p| p.len() <= 1);
        let (neg, body) = match body.strip_prefix('-') {
            Some(b) if single => (true, b.to_string()),
            _ => (false, body),
        };
        let coef = if factors.is_empty() {
            if single { body } else if latex { format!("\\left({body}\\right)") } else { format!("({body})") }
        } else if body == "1" {
            String::new()
        } else if single {
            body
        } else if latex {
            format!("\\left({body}\\right)")
        } else {
            format!("({body})")
        };
        let sep = if latex { " " } else { "*" };
        let mut t = coef;
        for f in factors {
            if !t.is_empty() {
                t.push_str(sep);
            }
            t.push_str(&f);
        }
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    out
}

impl<T: Scalar> fmt::Display for TrigSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Scalar> fmt::Debug for TrigSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Laurent polynomial in r over [`PiPoly`], the shape of an averaged function.
pub type RLaurent<T> = BTreeMap<i16, PiPoly<T>>;

pub fn laurent_is_zero<T: Scalar>(f: &RLaurent<T>) -> bool {
    f.values().all(PiPoly::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TrigSeries<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn pythagorean_reduction() {
        let c = S::monomial(0, 0, 0, 1, q(1));
        let c2 = c.mul(&c);
        let expect = S::one().sub(&S::monomial(0, 0, 2, 0, q(1)));
        assert_eq!(c2, expect);
        let c3 = S::monomial(0, 0, 0, 3, q(1));
        let expect3 = c.sub(&S::monomial(0, 0, 2, 1, q(1)));
        assert_eq!(c3, expect3);
    }

    #[test]
    fn sin_cos_squared() {
        let sc = S::monomial(0, 0, 1, 1, q(1));
        let expect = S::monomial(0, 0, 2, 0, q(1)).sub(&S::monomial(0, 0, 4, 0, q(1)));
        assert_eq!(sc.mul(&sc), expect);
    }

    #[test]
    fn laurent_and_diff() {
        let a = S::monomial(0, -1, 0, 0, q(1));
        let b = S::monomial(0, 3, 0, 0, q(1));
        assert_eq!(a.mul(&b), S::monomial(0, 2, 0, 0, q(1)));
        assert_eq!(a.diff_r(1), S::monomial(0, -2, 0, 0, q(-1)));
        assert_eq!(S::monomial(0, 2, 0, 0, q(1)).diff_r(1), S::monomial(0, 1, 0, 0, q(2)));
        assert!(S::monomial(0, 0, 1, 0, q(1)).diff_r(1).is_zero());
    }

    #[test]
    fn additive_inverse() {
        let a = S::monomial(1, 2, 1, 1, q(3));
        assert!(a.add(&a.neg()).is_zero());
        let pr = S::constant(PiPoly::pi_power(1, ParamPoly::one())).shift_r(1);
        let r = S::monomial(0, 1, 0, 0, q(1));
        let sum = pr.add(&r);
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.get(&TrigKey::new(0, 1, 0, 0)).unwrap().to_text(), "pi + 1");
    }
}
