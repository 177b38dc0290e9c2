//! Polynomials in the transcendental symbol π with [`ParamPoly`] coefficients.

use std::collections::HashMap;
use std::fmt;

use super::params::Param;
use super::parampoly::ParamPoly;
use super::rational::Rational;
use super::scalar::Scalar;

/// Dense in the π exponent; never carries trailing zero coefficients.
#[derive(Clone, PartialEq)]
pub struct PiPoly<T> {
    coeffs: Vec<ParamPoly<T>>,
}

impl<T: Scalar> Default for PiPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> From<ParamPoly<T>> for PiPoly<T> {
    fn from(p: ParamPoly<T>) -> Self {
        let mut out = PiPoly { coeffs: vec![p] };
        out.trim();
        out
    }
}

impl<T: Scalar> PiPoly<T> {
    pub fn zero() -> Self {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        ParamPoly::constant(c).into()
    }

    /// `c * π^k`.
    pub fn pi_power(k: usize, c: ParamPoly<T>) -> Self {
        let mut coeffs = vec![ParamPoly::zero(); k];
        coeffs.push(c);
        let mut out = PiPoly { coeffs };
        out.trim();
        out
    }

    pub fn from_coeffs(coeffs: Vec<ParamPoly<T>>) -> Self {
        let mut out = PiPoly { coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ParamPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in π; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[ParamPoly<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamPoly<T> {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Lowest π exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// The coefficient of π⁰ when no π occurs.
    pub fn as_param(&self) -> Option<&ParamPoly<T>> {
        match self.coeffs.len() {
            1 => Some(&self.coeffs[0]),
            _ => None,
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize_with(other.coeffs.len(), ParamPoly::zero);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign_ref(b);
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        self.add_scaled(other, &-T::one());
    }

    pub fn add_scaled(&mut self, other: &Self, s: &T) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize_with(other.coeffs.len(), ParamPoly::zero);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, s);
        }
        self.trim();
    }

    /// `self += s * a * b`.
    pub fn add_mul_scaled(&mut self, a: &Self, b: &Self, s: &T) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize_with(need, ParamPoly::zero);
        }
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_mul_scaled(ca, cb, s);
            }
        }
        self.trim();
    }

    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        self.add_mul_scaled(a, b, &T::one());
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul(self, other);
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn neg(&self) -> Self {
        PiPoly { coeffs: self.coeffs.iter().map(ParamPoly::neg).collect() }
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

    pub fn mul_param(&self, p: &ParamPoly<T>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    /// Multiplies by π^k.
    pub fn shift_pi(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ParamPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PiPoly { coeffs }
    }

    pub fn params(&self) -> std::collections::BTreeSet<Param> {
        self.coeffs.iter().flat_map(|c| c.params()).collect()
    }

    pub fn contains(&self, p: Param) -> bool {
        self.coeffs.iter().any(|c| c.contains(p))
    }

    pub fn eval<F: Fn(Param) -> T>(&self, pi: &T, value: F) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc *= pi;
            acc += &c.eval(&value);
        }
        acc
    }

    pub fn eval_partial(&self, values: &HashMap<Param, T>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.eval_partial(values)).collect())
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        let mut cache = vec![ParamPoly::one()];
        self.substitute_with_cache(p, rhs, &mut cache)
    }

    pub(crate) fn substitute_with_cache(
        &self,
        p: Param,
        rhs: &ParamPoly<T>,
        cache: &mut Vec<ParamPoly<T>>,
    ) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.substitute_with_cache(p, rhs, cache)).collect())
    }

    pub fn map_coeffs<U: Scalar, F: Fn(&T) -> U + Copy>(&self, f: F) -> PiPoly<U> {
        PiPoly::from_coeffs(self.coeffs.iter().map(|c| c.map_coeffs(f)).collect())
    }

    pub fn total_terms(&self) -> usize {
        self.coeffs.iter().map(ParamPoly::len).sum()
    }

    pub fn to_text(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

impl PiPoly<Rational> {
    pub fn to_f64(&self) -> PiPoly<f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    /// Gcd of all rational coefficients, signed like the leading displayed term.
    pub fn content(&self) -> Rational {
        use num_traits::Zero;
        let mut g = Rational::zero();
        for c in &self.coeffs {
            let h = c.content();
            if h.is_zero() {
                continue;
            }
            g = if g.is_zero() { h } else { g.gcd(&h) };
        }
        // sign of the highest π power
        if let Some(top) = self.coeffs.last() {
            let s = top.content().signum();
            if s * g.signum() < 0 {
                g = -g;
            }
        }
        g
    }
}

fn render<T: Scalar>(p: &PiPoly<T>, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let pi = if latex { "\\pi" } else { "pi" };
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let pik = match k {
            0 => String::new(),
            1 => pi.to_string(),
            _ if latex => format!("{pi}^{{{k}}}"),
            _ => format!("{pi}^{k}"),
        };
        let body = if latex { c.to_latex() } else { c.to_text() };
        let s = if k == 0 {
            body
        } else if body == "1" {
            pik
        } else if body == "-1" {
            format!("-{pik}")
        } else if c.is_single_term() {
            if latex {
                format!("{body} {pik}")
            } else {
                format!("{body}*{pik}")
            }
        } else if latex {
            format!("\\left({body}\\right) {pik}")
        } else {
            format!("({body})*{pik}")
        };
        parts.push(s);
    }
    let mut out = String::new();
    for (i, s) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&s);
        } else if let Some(rest) = s.strip_prefix('-') {
            out.push_str(if latex { "-" } else { " - " });
            out.push_str(rest);
        } else {
            out.push_str(if latex { "+" } else { " + " });
            out.push_str(&s);
        }
    }
    out
}

impl<T: Scalar> fmt::Display for PiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Scalar> fmt::Debug for PiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
