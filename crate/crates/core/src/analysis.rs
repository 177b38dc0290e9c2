//! Normalization of averaged functions, structural checks, Descartes bounds,
//! independence ranks and linear parameter elimination.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EngineError, Result};
use crate::normalform::{FSeries, PolarQuotient, SystemSpec};
use crate::symcore::{Param, ParamPoly, PiPoly, RLaurent, Rational, Scalar, TrigSeries};

/// `f_i = f̄_i / r^{ν_i}` with `f̄_i = Σ_j c_j r^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AveragedFunction<T: Scalar> {
    pub order: usize,
    pub nu: u32,
    /// `fbar[j]` is `c_j`; only nonzero coefficients are stored.
    pub fbar: BTreeMap<u32, PiPoly<T>>,
    /// Degree of `f̄`.
    pub n: u32,
    pub pi_degree: usize,
}

/// Builds `(ν, f̄)` and asserts `ν ≤ i−1`, `N ≤ i·n2`, π-degree `≤ i`.
pub fn normalize_f<T: Scalar>(f: &RLaurent<T>, i: usize, n2: u32) -> Result<AveragedFunction<T>> {
    let nz: Vec<(&i16, &PiPoly<T>)> = f.iter().filter(|(_, c)| !c.is_zero()).collect();
    let min = nz.first().map_or(0, |(e, _)| **e);
    let nu = if min < 0 { (-min) as u32 } else { 0 };
    let fbar: BTreeMap<u32, PiPoly<T>> = nz.iter().map(|(e, c)| ((**e as i64 + nu as i64) as u32, (*c).clone())).collect();
    let n = fbar.keys().next_back().copied().unwrap_or(0);
    let pi_degree = fbar.values().map(PiPoly::degree).max().unwrap_or(0);
    let af = AveragedFunction { order: i, nu, fbar, n, pi_degree };
    let bad = |detail: String| Err(EngineError::StructuralViolation { order: i, detail });
    if i >= 1 && nu as usize > i - 1 {
        return bad(format!("nu = {nu} exceeds {}", i - 1));
    }
    if n as u64 > i as u64 * n2 as u64 {
        return bad(format!("deg fbar = {n} exceeds {}", i as u64 * n2 as u64));
    }
    if pi_degree > i {
        return bad(format!("pi-degree {pi_degree} exceeds {i}"));
    }
    Ok(af)
}

impl<T: Scalar> AveragedFunction<T> {
    pub fn zero(order: usize) -> Self {
        AveragedFunction { order, nu: 0, fbar: BTreeMap::new(), n: 0, pi_degree: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.fbar.is_empty()
    }

    /// Back to the Laurent form `f̄ / r^ν`.
    pub fn laurent(&self) -> RLaurent<T> {
        self.fbar.iter().map(|(j, c)| ((*j as i64 - self.nu as i64) as i16, c.clone())).collect()
    }

    pub fn coeff(&self, j: u32) -> PiPoly<T> {
        self.fbar.get(&j).cloned().unwrap_or_default()
    }

    /// Coefficients in order of increasing r exponent.
    pub fn coefficients(&self) -> Vec<(u32, &PiPoly<T>)> {
        self.fbar.iter().map(|(j, c)| (*j, c)).collect()
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.fbar.values().flat_map(|c| c.params()).collect()
    }

    /// The polynomial pieces `(r exponent, π exponent, coefficient)`.
    pub fn components(&self) -> Vec<(u32, usize, &ParamPoly<T>)> {
        let mut out = Vec::new();
        for (j, c) in &self.fbar {
            for (k, p) in c.coeffs().iter().enumerate() {
                if !p.is_zero() {
                    out.push((*j, k, p));
                }
            }
        }
        out
    }

    pub fn substitute(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        let fbar: BTreeMap<u32, PiPoly<T>> = self
            .fbar
            .iter()
            .map(|(j, c)| (*j, c.substitute(p, rhs)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let n = fbar.keys().next_back().copied().unwrap_or(0);
        let pi_degree = fbar.values().map(PiPoly::degree).max().unwrap_or(0);
        AveragedFunction { order: self.order, nu: self.nu, fbar, n, pi_degree }
    }

    /// Float value at `r` with parameters and π evaluated.
    pub fn eval<F: Fn(Param) -> T + Copy>(&self, pi: &T, value: F, r: f64) -> f64 {
        let mut acc = 0.0;
        for (j, c) in &self.fbar {
            acc += c.eval(pi, value).to_f64() * r.powi(*j as i32);
        }
        acc / r.powi(self.nu as i32)
    }

    fn factored(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let min_pi = self.fbar.values().map(PiPoly::min_degree).min().unwrap_or(0);
        let min_r = *self.fbar.keys().next().unwrap() as i64 - self.nu as i64;
        // inner polynomial in r with the common π and r powers removed
        let inner: Vec<(i64, PiPoly<T>)> = self
            .fbar
            .iter()
            .rev()
            .map(|(j, c)| (*j as i64 - self.nu as i64 - min_r, PiPoly::from_coeffs(c.coeffs()[min_pi..].to_vec())))
            .collect();
        let mut factors: Vec<String> = Vec::new();
        let pi = if latex { "\\pi" } else { "pi" };
        match min_pi {
            0 => {}
            1 => factors.push(pi.into()),
            k if latex => factors.push(format!("{pi}^{{{k}}}")),
            k => factors.push(format!("{pi}^{k}")),
        }
        match min_r {
            0 => {}
            1 => factors.push("r".into()),
            k if latex => factors.push(format!("r^{{{k}}}")),
            k => factors.push(format!("r^{k}")),
        }
        let mut body = String::new();
        for (idx, (e, c)) in inner.iter().enumerate() {
            let cstr = if latex { c.to_latex() } else { c.to_text() };
            let single = c.coeffs().iter().filter(|p| !p.is_zero()).count() == 1 && c.coeffs().iter().all(|p| p.len() <= 1);
            let rpow = match e {
                0 => String::new(),
                1 => "r".into(),
                k if latex => format!("r^{{{k}}}"),
                k => format!("r^{k}"),
            };
            let term = if rpow.is_empty() {
                cstr
            } else if cstr == "1" {
                rpow
            } else if cstr == "-1" {
                format!("-{rpow}")
            } else if single {
                if latex { format!("{cstr} {rpow}") } else { format!("{cstr}*{rpow}") }
            } else if latex {
                format!("\\left({cstr}\\right) {rpow}")
            } else {
                format!("({cstr})*{rpow}")
            };
            if idx == 0 {
                body.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                body.push_str(if latex { "-" } else { " - " });
                body.push_str(rest);
            } else {
                body.push_str(if latex { "+" } else { " + " });
                body.push_str(&term);
            }
        }
        let single_inner = inner.len() == 1 && {
            let c = &inner[0].1;
            c.coeffs().iter().filter(|p| !p.is_zero()).count() == 1 && c.coeffs().iter().all(|p| p.len() <= 1)
        };
        let mut neg = false;
        if body != "1" || factors.is_empty() {
            if factors.is_empty() || single_inner {
                if let Some(b) = body.strip_prefix('-').filter(|_| !factors.is_empty()) {
                    neg = true;
                    body = b.to_string();
                }
                if body != "1" {
                    factors.push(body);
                }
            } else if latex {
                factors.push(format!("\\left({body}\\right)"));
            } else {
                factors.push(format!("({body})"));
            }
        }
        let s = factors.join(if latex { " " } else { "*" });
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }

    /// Factored rendering `content * pi^a * r^b * (inner)`.
    pub fn to_text(&self) -> String {
        self.factored(false)
    }

    pub fn to_latex(&self) -> String {
        self.factored(true)
    }
}

impl AveragedFunction<Rational> {
    /// Positive gcd of all rational coefficients.
    pub fn rational_content(&self) -> Rational {
        let mut g = Rational::zero();
        for c in self.fbar.values() {
            let h = c.content().abs();
            if h.is_zero() {
                continue;
            }
            g = if g.is_zero() { h } else { g.gcd(&h) };
        }
        if g.is_zero() {
            Rational::one()
        } else {
            g
        }
    }

    pub fn render_text(&self) -> String {
        factored_exact(self, false)
    }

    pub fn render_latex(&self) -> String {
        factored_exact(self, true)
    }
}

fn factored_exact(f: &AveragedFunction<Rational>, latex: bool) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let g = f.rational_content();
    let scaled = AveragedFunction {
        order: f.order,
        nu: f.nu,
        fbar: f.fbar.iter().map(|(j, c)| (*j, c.scale(&g.recip()))).collect(),
        n: f.n,
        pi_degree: f.pi_degree,
    };
    let body = scaled.factored(latex);
    if g.is_one() {
        return body;
    }
    let gs = if latex {
        if g.is_integer() {
            g.to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", g.numer(), g.denom())
        }
    } else if g.is_integer() {
        g.to_string()
    } else {
        format!("({g})")
    };
    match body.strip_prefix('-') {
        Some(rest) => format!("-{gs}{}{rest}", if latex { " " } else { "*" }),
        None => format!("{gs}{}{body}", if latex { " " } else { "*" }),
    }
}

impl<T: Scalar> fmt::Display for AveragedFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// How coefficient signs are established for the Descartes count.
#[derive(Clone, Debug, PartialEq)]
pub enum SignMode {
    /// Coefficients are independent, so every sign pattern is reachable.
    Independent,
    /// Signs from a concrete instantiation (π is evaluated numerically).
    Numeric(HashMap<Param, Rational>),
    /// Only parameter-free coefficients are accepted.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescartesReport {
    /// `(r exponent, sign)` of each nonzero coefficient of `f̄`.
    pub pattern: Vec<(u32, i8)>,
    pub variations: usize,
    pub bound: usize,
}

pub fn descartes_bound(f: &AveragedFunction<Rational>, mode: &SignMode) -> Result<DescartesReport> {
    let coeffs = f.coefficients();
    let mut pattern: Vec<(u32, i8)> = Vec::new();
    match mode {
        SignMode::Independent => {
            for (i, (j, _)) in coeffs.iter().enumerate() {
                pattern.push((*j, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        SignMode::Numeric(values) => {
            for (j, c) in &coeffs {
                let v = c.to_f64().eval(&std::f64::consts::PI, |p| values.get(&p).map_or(0.0, |q| q.to_f64()));
                if v != 0.0 {
                    pattern.push((*j, if v > 0.0 { 1 } else { -1 }));
                }
            }
        }
        SignMode::Exact => {
            for (j, c) in &coeffs {
                if !c.params().is_empty() {
                    return Err(EngineError::IndeterminateSign(format!("r^{j}")));
                }
                let v = c.to_f64().eval(&std::f64::consts::PI, |_| 0.0);
                pattern.push((*j, if v > 0.0 { 1 } else { -1 }));
            }
        }
    }
    let variations = pattern.windows(2).filter(|w| w[0].1 != w[1].1).count();
    Ok(DescartesReport { pattern, variations, bound: variations })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-97..=97);
    let d: i64 = rng.gen_range(1..=31);
    Rational::new(if n == 0 { 1 } else { n }, d)
}

/// Exact rank of a rational matrix.
pub fn matrix_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= &v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Generic rank of `∂coeffs/∂params`, as the maximum over three random
/// rational points (π is drawn as well).
pub fn independence_rank(coeffs: &[PiPoly<Rational>], params: &[Param], seed: u64) -> usize {
    if coeffs.is_empty() || params.is_empty() {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: BTreeSet<Param> = params.iter().copied().collect();
    for c in coeffs {
        all.extend(c.params());
    }
    let mut best = 0;
    for _ in 0..3 {
        let point: HashMap<Param, Rational> = all.iter().map(|p| (*p, random_rational(&mut rng))).collect();
        let pi = random_rational(&mut rng);
        let mat: Vec<Vec<Rational>> = coeffs
            .iter()
            .map(|c| {
                params
                    .iter()
                    .map(|p| {
                        let d = PiPoly::from_coeffs(c.coeffs().iter().map(|q| q.diff(*p)).collect());
                        d.eval(&pi, |x| point.get(&x).cloned().unwrap_or_default())
                    })
                    .collect()
            })
            .collect();
        best = best.max(matrix_rank(mat));
        if best == coeffs.len().min(params.len()) {
            break;
        }
    }
    best
}

/// Ordered parameter assignments, applied left to right.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SubstitutionMap<T: Scalar> {
    pub assignments: Vec<(Param, ParamPoly<T>)>,
}

/// Anything polynomial in the parameters.
pub trait Substitutable<T>: Sized {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self;
}

impl<T: Scalar> Substitutable<T> for ParamPoly<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for PiPoly<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for TrigSeries<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for FSeries<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for AveragedFunction<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for SystemSpec<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}
impl<T: Scalar> Substitutable<T> for PolarQuotient<T> {
    fn substitute_param(&self, p: Param, rhs: &ParamPoly<T>) -> Self {
        self.substitute(p, rhs)
    }
}

impl<T: Scalar> SubstitutionMap<T> {
    pub fn new() -> Self {
        SubstitutionMap { assignments: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn push(&mut self, p: Param, rhs: ParamPoly<T>) {
        self.assignments.push((p, rhs));
    }

    pub fn extend(&mut self, other: &SubstitutionMap<T>) {
        self.assignments.extend(other.assignments.iter().cloned());
    }

    /// Rewrites each right-hand side through the earlier assignments and
    /// rejects any assignment whose parameter survives on its own right side.
    pub fn triangularize(&self) -> Result<Self> {
        let mut out: Vec<(Param, ParamPoly<T>)> = Vec::with_capacity(self.assignments.len());
        for (p, rhs) in &self.assignments {
            let mut r = rhs.clone();
            for (q, qr) in &out {
                r = r.substitute(*q, qr);
            }
            if r.contains(*p) {
                return Err(EngineError::CyclicSubstitution(p.to_string()));
            }
            out.push((*p, r));
        }
        Ok(SubstitutionMap { assignments: out })
    }

    pub fn apply<S: Substitutable<T> + Clone>(&self, target: &S) -> S {
        let mut out = target.clone();
        for (p, rhs) in &self.assignments {
            out = out.substitute_param(*p, rhs);
        }
        out
    }
}

/// Applies `subs` in order; an empty map is the identity.
pub fn apply_substitutions<T: Scalar, S: Substitutable<T> + Clone>(target: &S, subs: &SubstitutionMap<T>) -> S {
    subs.apply(target)
}

fn not_solvable(p: Param, reason: impl Into<String>) -> EngineError {
    EngineError::NotLinearlySolvable { param: p.to_string(), reason: reason.into() }
}

/// If `p` occurs in `comp` as `c·p + rest` with `c` a nonzero constant,
/// the value `−rest / c`.
fn linear_solution<T: Scalar>(comp: &ParamPoly<T>, p: Param) -> Option<ParamPoly<T>> {
    if comp.degree_in(p) != 1 {
        return None;
    }
    let c = comp.coeff_of(p, 1).as_constant()?;
    if c.is_zero() {
        return None;
    }
    let rest = comp.coeff_of(p, 0);
    Some(rest.scale(&(-T::one() / c)))
}

/// If `comp = c·p + rest` where the polynomial `c` divides `rest`, the
/// value `−rest / c`; it clears the factor `p + rest/c` of `comp`.
fn factor_solution<T: Scalar>(comp: &ParamPoly<T>, p: Param) -> Option<ParamPoly<T>> {
    if comp.degree_in(p) != 1 {
        return None;
    }
    let c = comp.coeff_of(p, 1);
    if c.is_zero() {
        return None;
    }
    Some(comp.coeff_of(p, 0).div_exact(&c)?.neg())
}

/// `p` from the first component (in `(r, π)` order) where it occurs
/// linearly with a nonzero rational coefficient.
fn solve_from_component<T: Scalar>(f: &AveragedFunction<T>, p: Param) -> Result<ParamPoly<T>> {
    let comps = f.components();
    let mut reason = None;
    for (j, k, comp) in comps.iter().filter(|(_, _, c)| c.contains(p)) {
        if let Some(rhs) = linear_solution(comp, p) {
            return Ok(rhs);
        }
        reason.get_or_insert_with(|| {
            if comp.degree_in(p) != 1 {
                format!("occurs nonlinearly in the r^{j}*pi^{k} coefficient")
            } else {
                format!("coefficient in the r^{j}*pi^{k} coefficient is not a rational constant")
            }
        });
    }
    Err(not_solvable(p, reason.unwrap_or_else(|| "parameter does not occur".into())))
}

/// Solves `f̄ ≡ 0` for `p` alone, requiring every component that contains
/// `p` to vanish after elimination.
pub fn solve_linear_param<T: Scalar>(f: &AveragedFunction<T>, p: Param) -> Result<(Param, ParamPoly<T>)> {
    let rhs = solve_from_component(f, p)?;
    for (j, k, c) in &f.components() {
        if c.contains(p) && !c.substitute(p, &rhs).is_zero() {
            return Err(not_solvable(p, format!("elimination leaves a residue in the r^{j}*pi^{k} coefficient")));
        }
    }
    Ok((p, rhs))
}

/// Sequential elimination: each parameter is taken from the first
/// coefficient where it is linear with a rational factor, after the earlier
/// eliminations. The result must make `f̄` vanish identically.
pub fn solve_linear_params<T: Scalar>(f: &AveragedFunction<T>, params: &[Param]) -> Result<SubstitutionMap<T>> {
    let mut cur = f.clone();
    let mut map = SubstitutionMap::new();
    for &p in params {
        let rhs = solve_from_component(&cur, p)?;
        cur = cur.substitute(p, &rhs);
        map.push(p, rhs);
    }
    if !cur.is_zero() {
        let left: Vec<String> = cur.components().iter().map(|(j, k, _)| format!("r^{j}*pi^{k}")).collect();
        return Err(not_solvable(
            *params.last().unwrap_or(&Param::intern("__none__")),
            format!("coefficients {} remain after elimination", left.join(", ")),
        ));
    }
    Ok(map)
}

/// Chooses eliminations automatically. The first surviving coefficient is
/// cleared by a parameter occurring in it linearly with a rational factor,
/// preferring one that touches the fewest other coefficients and then the
/// last in name order. Failing that, a parameter whose polynomial factor
/// divides the rest of the coefficient is used, which sets one factor of
/// the coefficient to zero. Every step removes one parameter, so this ends with
/// either `f̄ ≡ 0` or an error.
pub fn auto_eliminate<T: Scalar>(f: &AveragedFunction<T>) -> Result<SubstitutionMap<T>> {
    let mut cur = f.clone();
    let mut map = SubstitutionMap::new();
    loop {
        let comps = cur.components();
        let Some((j, k, comp)) = comps.first().map(|(j, k, c)| (*j, *k, (*c).clone())) else {
            break;
        };
        let mut cands: Vec<(u8, usize, Param, ParamPoly<T>)> = comp
            .params()
            .into_iter()
            .filter_map(|p| {
                let (tier, rhs) = match linear_solution(&comp, p) {
                    Some(rhs) => (0, rhs),
                    None => (1, factor_solution(&comp, p)?),
                };
                let touched = comps.iter().skip(1).filter(|(_, _, c)| c.contains(p)).count();
                Some((tier, touched, p, rhs))
            })
            .collect();
        cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| b.2.cmp_by_name(a.2)));
        let Some((_, _, p, rhs)) = cands.into_iter().next() else {
            return Err(EngineError::NotLinearlySolvable {
                param: format!("r^{j}*pi^{k} coefficient"),
                reason: "no parameter occurs linearly with a rational coefficient".into(),
            });
        };
        cur = cur.substitute(p, &rhs);
        map.push(p, rhs);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn var(s: &str) -> ParamPoly<Rational> {
        ParamPoly::var(Param::intern(s))
    }

    fn pi_r(c: ParamPoly<Rational>) -> RLaurent<Rational> {
        let mut f = RLaurent::new();
        f.insert(1, PiPoly::pi_power(1, c));
        f
    }

    #[test]
    fn normalize_examples() {
        let f = normalize_f(&pi_r(var("an_a").add(&var("an_b"))), 1, 3).unwrap();
        assert_eq!((f.nu, f.n, f.pi_degree), (0, 1, 1));
        let z = normalize_f(&RLaurent::<Rational>::new(), 1, 3).unwrap();
        assert!(z.is_zero() && z.nu == 0);
        let mut g = RLaurent::new();
        g.insert(-1, PiPoly::constant(q(2)));
        g.insert(1, PiPoly::constant(q(3)));
        let g = normalize_f(&g, 2, 3).unwrap();
        assert_eq!(g.nu, 1);
        assert_eq!(g.fbar.keys().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(g.laurent().len(), 2);
        assert!(matches!(normalize_f(&{
            let mut h = RLaurent::new();
            h.insert(-2, PiPoly::constant(q(1)));
            h
        }, 2, 3), Err(EngineError::StructuralViolation { .. })));
    }

    #[test]
    fn descartes_examples() {
        let mut f = RLaurent::new();
        f.insert(0, PiPoly::constant(q(1)));
        f.insert(1, PiPoly::constant(q(-3)));
        f.insert(2, PiPoly::constant(q(2)));
        let f = normalize_f(&f, 3, 3).unwrap();
        assert_eq!(descartes_bound(&f, &SignMode::Exact).unwrap().bound, 2);
        let mut g = RLaurent::new();
        g.insert(1, PiPoly::constant(q(1)));
        g.insert(3, PiPoly::constant(q(5)));
        let g = normalize_f(&g, 3, 3).unwrap();
        assert_eq!(descartes_bound(&g, &SignMode::Exact).unwrap().bound, 0);
    }

    #[test]
    fn rank_examples() {
        let p = Param::intern("an_p");
        let pp = PiPoly::from(var("an_p"));
        assert_eq!(independence_rank(&[pp.clone(), pp], &[p], 1), 1);
        assert_eq!(independence_rank(&[PiPoly::constant(q(3))], &[p], 1), 0);
    }

    #[test]
    fn solve_examples() {
        let f = normalize_f(&pi_r(var("an_a11").add(&var("an_b12"))), 1, 3).unwrap();
        let (p, rhs) = solve_linear_param(&f, Param::intern("an_b12")).unwrap();
        assert_eq!(rhs, var("an_a11").neg());
        assert!(f.substitute(p, &rhs).is_zero());
        let sq = normalize_f(&pi_r(var("an_al").pow(2)), 1, 3).unwrap();
        assert!(matches!(solve_linear_param(&sq, Param::intern("an_al")), Err(EngineError::NotLinearlySolvable { .. })));
    }

    #[test]
    fn cyclic_maps_are_rejected() {
        let (a, b) = (Param::intern("an_c1"), Param::intern("an_c2"));
        let mut m = SubstitutionMap::new();
        m.push(a, var("an_c2"));
        m.push(b, var("an_c1").add(&ParamPoly::constant(q(1))));
        assert!(matches!(m.triangularize(), Err(EngineError::CyclicSubstitution(_))));
        // p = p - (p + x) is fine: p cancels
        let mut ok = SubstitutionMap::new();
        ok.push(a, var("an_c1").sub(&var("an_c1").add(&var("an_x"))));
        assert_eq!(ok.triangularize().unwrap().assignments[0].1, var("an_x").neg());
    }
}
