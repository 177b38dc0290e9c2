//! Sparse multivariate polynomials in the free parameters.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::Zero;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::params::Param;
use super::rational::Rational;
use super::scalar::Scalar;

/// Power product of parameters, stored as a sorted list of packed
/// `(param << 16) | exponent` words with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

#[inline]
fn pack(p: Param, e: u32) -> u32 {
    debug_assert!(e > 0 && e < (1 << 16));
    ((p.0 as u32) << 16) | e
}

#[inline]
fn unpack(w: u32) -> (Param, u32) {
    (Param((w >> 16) as u16), w & 0xffff)
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(p: Param) -> Self {
        Self::power(p, 1)
    }

    pub fn power(p: Param, e: u32) -> Self {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push(pack(p, e));
        }
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, u32)> + '_ {
        self.0.iter().map(|&w| unpack(w))
    }

    pub fn degree(&self) -> u32 {
        self.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| e)
    }

    /// Copy of `self` with `p` removed, and the exponent it had.
    pub fn split_off(&self, p: Param) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .copied()
            .filter(|&w| {
                let (q, f) = unpack(w);
                if q == p {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .collect();
        (Monomial(rest), e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.0.is_empty() {
            return other.clone();
        }
        if other.0.is_empty() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (pa, pb) = (a[i] >> 16, b[j] >> 16);
            match pa.cmp(&pb) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i] + (b[j] & 0xffff));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for &w in &self.0 {
            let (p, e) = unpack(w);
            if j < b.len() && unpack(b[j]).0 == p {
                let f = unpack(b[j]).1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push(pack(p, e - f)),
                }
            } else if j < b.len() && unpack(b[j]).0 < p {
                return None;
            } else {
                out.push(w);
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Graded order by total degree, ties broken on the packed words; a
    /// monomial order, so leading terms multiply.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                let ((pa, ea), (pb, eb)) = (unpack(*a), unpack(*b));
                if pa != pb {
                    // the word with the smaller parameter index has that variable to a positive power
                    return pb.cmp(&pa);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }

    /// Ordering used for display: parameters compared by name.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        let mut a: Vec<(Param, u32)> = self.iter().collect();
        let mut b: Vec<(Param, u32)> = other.iter().collect();
        a.sort_by(|x, y| x.0.cmp_by_name(y.0));
        b.sort_by(|x, y| x.0.cmp_by_name(y.0));
        // constants last, then lexicographic with higher powers first
        match (a.is_empty(), b.is_empty()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        for (x, y) in a.iter().zip(b.iter()) {
            let o = x.0.cmp_by_name(y.0).then(y.1.cmp(&x.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    }

    fn fmt_text(&self) -> String {
        let mut v: Vec<(Param, u32)> = self.iter().collect();
        v.sort_by(|x, y| x.0.cmp_by_name(y.0));
        v.iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn fmt_latex(&self) -> String {
        let mut v: Vec<(Param, u32)> = self.iter().collect();
        v.sort_by(|x, y| x.0.cmp_by_name(y.0));
        v.iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.latex()
                } else {
                    format!("{}^{{{e}}}", p.latex())
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.fmt_text())
        }
    }
}

/// Polynomial over `T` in the interned free parameters.
///
/// Zero coefficients are never stored, so equality is equality of term maps.
#[derive(Clone)]
pub struct ParamPoly<T> {
    terms: FxHashMap<Monomial, T>,
}

impl<T: PartialEq> PartialEq for ParamPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: Eq> Eq for ParamPoly<T> {}

impl Hash for ParamPoly<Rational> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // order-independent combination
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let mut h = rustc_hash::FxHasher::default();
            m.hash(&mut h);
            c.hash(&mut h);
            acc = acc.wrapping_add(h.finish());
        }
        acc.hash(state);
        self.terms.len().hash(state);
    }
}

impl<T: Scalar> Default for ParamPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> ParamPoly<T> {
    pub fn zero() -> Self {
        ParamPoly { terms: FxHashMap::default() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(p: Param) -> Self {
        Self::term(Monomial::var(p), T::one())
    }

    pub fn term(m: Monomial, c: T) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&Monomial::one())
    }

    /// The value when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<T> {
        match self.terms.len() {
            0 => Some(T::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.terms.is_empty() {
            self.terms = other.terms.clone();
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(-c.clone()));
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: &T) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            let mut v = c.clone();
            v *= s;
            self.add_term(m.clone(), &v);
        }
    }

    /// `self += a * b`, accumulating in place.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        self.terms.reserve(b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                self.terms.entry(m).or_insert_with(T::zero).add_mul(ca, cb);
            }
        }
        self.prune();
    }

    /// `self += s * a * b`.
    pub fn add_mul_scaled(&mut self, a: &Self, b: &Self, s: &T) {
        if a.is_zero() || b.is_zero() || s.is_zero() {
            return;
        }
        let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for (ma, ca) in &a.terms {
            let mut cs = ca.clone();
            cs *= s;
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                self.terms.entry(m).or_insert_with(T::zero).add_mul(&cs, cb);
            }
        }
        self.prune();
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn neg(&self) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        ParamPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
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

    /// Leading term under [`Monomial::grlex_cmp`].
    pub fn leading_term(&self) -> Option<(&Monomial, &T)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((rm, rc)) = r.leading_term() {
            let m = rm.div(&dm)?;
            let c = rc.clone() / dc.clone();
            let lead = rm.clone();
            let t = ParamPoly { terms: std::iter::once((m.clone(), c.clone())).collect() };
            r.add_mul_scaled(&t, d, &-T::one());
            // the leading monomial cancels exactly over an exact field
            r.terms.remove(&lead);
            q.add_term(m, &c);
        }
        Some(q)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    /// Coefficient of `p^e`, as a polynomial in the remaining parameters.
    pub fn coeff_of(&self, p: Param, e: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, f) = m.split_off(p);
            if f == e {
                out.add_term(rest, c);
            }
        }
        out
    }

    pub fn diff(&self, p: Param) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(p);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::power(p, e - 1));
            let mut v = c.clone();
            v *= &T::from_i64(e as i64);
            out.add_term(mono, &v);
        }
        out
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.keys().flat_map(|m| m.iter().map(|(p, _)| p)).collect()
    }

    pub fn contains(&self, p: Param) -> bool {
        self.terms.keys().any(|m| m.exponent(p) > 0)
    }

    pub fn eval<F: Fn(Param) -> T>(&self, value: F) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (p, e) in m.iter() {
                let v = value(p);
                for _ in 0..e {
                    t *= &v;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial evaluation: parameters present in `values` are replaced.
    pub fn eval_partial(&self, values: &HashMap<Param, T>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = Monomial::one();
            for (p, e) in m.iter() {
                match values.get(&p) {
                    Some(v) => {
                        for _ in 0..e {
                            t *= v;
                        }
                    }
                    None => rest = rest.mul(&Monomial::power(p, e)),
                }
            }
            out.add_term(rest, &t);
        }
        out
    }

    /// Replaces `p` by `rhs` everywhere.
    pub fn substitute(&self, p: Param, rhs: &Self) -> Self {
        let mut powers = vec![Self::one()];
        self.substitute_with_cache(p, rhs, &mut powers)
    }

    pub(crate) fn substitute_with_cache(&self, p: Param, rhs: &Self, powers: &mut Vec<Self>) -> Self {
        if !self.contains(p) {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(p);
            if e == 0 {
                out.add_term(rest, c);
                continue;
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(rhs);
                powers.push(next);
            }
            let pw = &powers[e as usize];
            for (mr, cr) in &pw.terms {
                let mut v = c.clone();
                v *= cr;
                out.add_term(rest.mul(mr), &v);
            }
        }
        out
    }

    pub fn map_coeffs<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> ParamPoly<U> {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    /// Number of summands when printed; used to decide on parentheses.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }
}

impl ParamPoly<Rational> {
    /// Gcd of all coefficients, with the sign of the first displayed term.
    pub fn content(&self) -> Rational {
        let mut g = Rational::zero();
        for c in self.terms.values() {
            g = if g.is_zero() { c.abs() } else { g.gcd(c) };
        }
        if let Some((_, c)) = self.sorted_terms().first() {
            if c.signum() < 0 {
                g = -g;
            }
        }
        g
    }

    pub fn to_f64(&self) -> ParamPoly<f64> {
        self.map_coeffs(|c| c.to_f64())
    }
}

fn fmt_coeff_text<T: Scalar>(c: &T, mono: &Monomial, first: bool, out: &mut String) {
    let s = c.to_string();
    let (neg, mag) = match s.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, s),
    };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_one() {
        out.push_str(&mag);
    } else if mag == "1" {
        out.push_str(&mono.fmt_text());
    } else {
        out.push_str(&mag);
        out.push('*');
        out.push_str(&mono.fmt_text());
    }
}

impl<T: Scalar> ParamPoly<T> {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            fmt_coeff_text(c, m, i == 0, &mut out);
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = match mag.split_once('/') {
                Some((n, d)) => format!("\\frac{{{n}}}{{{d}}}"),
                None => mag,
            };
            if m.is_one() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                }
                out.push_str(&m.fmt_latex());
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for ParamPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Scalar> fmt::Debug for ParamPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
