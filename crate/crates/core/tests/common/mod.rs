#![allow(dead_code)]

use std::collections::BTreeMap;

use averaging_core::analysis::AveragedFunction;
use averaging_core::normalform::{Perturbation, SystemSpec};
use averaging_core::symcore::{parse_param_expr, Param, ParamPoly, PiPoly, Rational, TrigSeries, XYPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Rational::new(n, d)
}

pub fn expr(s: &str) -> ParamPoly<Q> {
    parse_param_expr(s).unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

pub fn var(s: &str) -> ParamPoly<Q> {
    ParamPoly::var(Param::intern(s))
}

/// `c(π)` as a polynomial with `pi` a free parameter.
pub fn pi_as_param(c: &PiPoly<Q>) -> ParamPoly<Q> {
    let pi = var("pi");
    let mut acc = ParamPoly::zero();
    for (k, ck) in c.coeffs().iter().enumerate() {
        acc = acc.add(&ck.mul(&pi.pow(k as u32)));
    }
    acc
}

/// The averaged function with `r` and `pi` as free parameters; requires
/// no negative powers of r.
pub fn as_poly(f: &AveragedFunction<Q>) -> ParamPoly<Q> {
    assert_eq!(f.nu, 0, "f_{} has a pole at r = 0", f.order);
    let r = var("r");
    let mut acc = ParamPoly::zero();
    for (j, c) in &f.fbar {
        acc = acc.add(&pi_as_param(c).mul(&r.pow(*j)));
    }
    acc
}

/// `f̄` coefficient of `r^j` as a polynomial with `pi` free.
pub fn r_coeff(f: &AveragedFunction<Q>, j: u32) -> ParamPoly<Q> {
    f.fbar.get(&j).map(pi_as_param).unwrap_or_default()
}

pub fn r_exponents(f: &AveragedFunction<Q>) -> Vec<u32> {
    f.fbar.keys().copied().collect()
}

fn small(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(-3..=3);
    let d = rng.gen_range(1..=2);
    q(n, d)
}

/// Random sparse homogeneous polynomial of degree `t`, coefficients small
/// rationals, optionally mixed with the parameter `name`.
fn random_homogeneous(rng: &mut ChaCha8Rng, t: u32, name: Option<&str>) -> XYPoly<Q> {
    let mut out = XYPoly::zero();
    for i in 0..=t {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut c = ParamPoly::constant(small(rng));
        if let Some(n) = name {
            if rng.gen_bool(0.3) {
                c = c.add(&var(n));
            }
        }
        out.add_term(t - i, i, &c);
    }
    out
}

/// A small random system with a canonical linear part, quadratic or cubic
/// unperturbed terms and perturbations of degree 1..=2 (so `F0 = 0`).
pub fn random_system(rng: &mut ChaCha8Rng, order: usize) -> SystemSpec<Q> {
    let n1 = rng.gen_range(2..=3);
    let mut p = XYPoly::term(0, 1, ParamPoly::constant(q(-1, 1)));
    let mut qq = XYPoly::term(1, 0, ParamPoly::constant(q(1, 1)));
    for m in 2..=n1 {
        p = p.add(&random_homogeneous(rng, m, None));
        qq = qq.add(&random_homogeneous(rng, m, None));
    }
    let perts = (1..=order)
        .map(|s| {
            let name = format!("rp_{s}");
            let mut dx = XYPoly::zero();
            let mut dy = XYPoly::zero();
            for t in 1..=2 {
                dx = dx.add(&random_homogeneous(rng, t, Some(&name)));
                dy = dy.add(&random_homogeneous(rng, t, Some(&name)));
            }
            Perturbation { dx, dy }
        })
        .collect();
    SystemSpec::new(p, qq, perts, order).expect("canonical by construction")
}

/// Integer-coefficient random trigonometric series in `θ, r, S, C`.
pub fn random_trig(rng: &mut ChaCha8Rng, terms: usize, with_theta: bool) -> TrigSeries<Q> {
    let mut out = TrigSeries::zero();
    for _ in 0..terms {
        let theta = if with_theta { rng.gen_range(0..=2) } else { 0 };
        let c = q(rng.gen_range(-4..=4), 1);
        let s = TrigSeries::monomial(theta, rng.gen_range(-1..=3), rng.gen_range(0..=3), rng.gen_range(0..=3), c);
        out = out.add(&s);
    }
    out
}

/// Composite 5-point Gauss–Legendre rule on `[0, b]`.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = b / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W.iter()) {
            acc += w * f(mid + 0.5 * h * x);
        }
    }
    acc * 0.5 * h
}

pub fn laurent_text(l: &BTreeMap<i16, PiPoly<Q>>) -> String {
    l.iter().map(|(e, c)| format!("r^{e}: {}", c.to_text())).collect::<Vec<_>>().join("; ")
}
