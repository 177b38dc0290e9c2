//! Polynomials in the phase variables `x`, `y` with [`ParamPoly`] coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::params::Param;
use super::parampoly::ParamPoly;
use super::rational::Rational;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Default)]
pub struct XYPoly<T> {
    /// `(i, j)` is the coefficient of `x^i y^j`.
    terms: BTreeMap<(u32, u32), ParamPoly<T>>,
}

impl<T: Scalar> XYPoly<T> {
    pub fn zero() -> Self {
        XYPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: ParamPoly<T>) -> Self {
        Self::term(0, 0, c)
    }

    pub fn x() -> Self {
        Self::term(1, 0, ParamPoly::one())
    }

    pub fn y() -> Self {
        Self::term(0, 1, ParamPoly::one())
    }

    pub fn term(i: u32, j: u32, c: ParamPoly<T>) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, &c);
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &ParamPoly<T>) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &ParamPoly<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> ParamPoly<T> {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Total degree in `x, y`; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Terms of exact total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        XYPoly { terms: self.terms.iter().filter(|((i, j), _)| i + j == d).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        XYPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &ParamPoly<T>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out.add_term(*i, *j, &c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.add_term(i + k, j + l, &a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(ParamPoly::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out.add_term(*i, *j, &c.substitute(p, rhs));
        }
        out
    }

    pub fn params(&self) -> std::collections::BTreeSet<Param> {
        self.terms.values().flat_map(|c| c.params()).collect()
    }

    /// Terms by increasing total degree, `x` powers first within a degree;
    /// coefficients are parenthesized only when they are sums.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
        let mut out = String::new();
        for (n, key) in keys.into_iter().enumerate() {
            let (i, j) = *key;
            let c = &self.terms[key];
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("y".to_string()),
                _ => mono.push(format!("y^{j}")),
            }
            let mono = mono.join("*");
            let body = c.to_text();
            let term = if c.len() > 1 {
                if mono.is_empty() { format!("({body})") } else { format!("({body})*{mono}") }
            } else if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else if body == "-1" {
                format!("-{mono}")
            } else {
                format!("{body}*{mono}")
            };
            match (n, term.strip_prefix('-')) {
                (0, _) => out.push_str(&term),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

impl XYPoly<Rational> {
    pub fn to_f64(&self) -> XYPoly<f64> {
        XYPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.to_f64())).collect() }
    }
}

impl<T: Scalar> fmt::Debug for XYPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
