//! One line per acceptance criterion. Sub-checks whose expectation cannot be
//! met by any correct engine are reported as `FAIL (known)` and do not
//! abort the run; the ignored test at the bottom asserts them literally.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use averaging_core::analysis::{descartes_bound, independence_rank, AveragedFunction, SignMode, SubstitutionMap};
use averaging_core::averaging::{emit_integrand_formula, run, AveragingRun, RunOptions, Stage, StageRule};
use averaging_core::fixtures::{auto_stages, collins, collins_stages, kukles, loud, reversible, reversible_stages};
use averaging_core::normalform::{normalize, to_polar_quotient};
use averaging_core::symcore::{Param, ParamPoly, PiPoly, Rational, TrigSeries};
use averaging_core::trigcalc::{eval_monomial_integral, integrate};
use averaging_core::verify::{displacement, eps_ladder, poincare_return, NumericSystem};
use averaging_core::EngineError;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Report {
    failures: Vec<String>,
}

impl Report {
    fn line(&mut self, id: &str, what: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {what}{}", if detail.is_empty() { String::new() } else { format!(" ({detail})") });
        if !ok {
            self.failures.push(format!("{id} {what}"));
        }
    }

    /// A check expected to fail; reported but not counted.
    fn known(&mut self, id: &str, what: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS (was expected to fail)" } else { "FAIL (known)" };
        println!("[{tag}] {id} {what} ({detail})");
    }
}

fn same(a: &ParamPoly<Rational>, b: &ParamPoly<Rational>) -> bool {
    a.sub(b).is_zero()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

/// Every map applied before computing `f_h`, in order.
fn maps_up_to(out: &AveragingRun<Rational>, h: usize) -> Vec<&SubstitutionMap<Rational>> {
    out.applied.iter().filter(|(s, _)| *s <= h).map(|(_, m)| m).collect()
}

fn apply_all(p: &ParamPoly<Rational>, maps: &[&SubstitutionMap<Rational>]) -> ParamPoly<Rational> {
    maps.iter().fold(p.clone(), |acc, m| m.apply(&acc))
}

fn full_rank(f: &AveragedFunction<Rational>) -> (usize, usize) {
    let coeffs: Vec<PiPoly<Rational>> = f.fbar.values().cloned().collect();
    let params: Vec<Param> = f.params().into_iter().collect();
    (independence_rank(&coeffs, &params, 7), coeffs.len())
}

const A2: &str = "4*alpha_1_1 + 3*alpha_1_6 + alpha_1_8 + beta_1_7 + 3*beta_1_9";
const A0: &str = "4*(alpha_3_1 + beta_3_2)";
const B2: &str = "4*alpha_1_1*alpha_1_2 + 2*alpha_1_1*alpha_1_7 + 2*alpha_1_1*beta_1_8 + alpha_1_2*alpha_1_8 \
    + 3*alpha_1_2*beta_1_9 + alpha_1_3*alpha_1_4 - 2*alpha_1_3*beta_1_3 + alpha_1_4*alpha_1_5 \
    + 2*alpha_1_5*beta_1_5 + alpha_1_8*beta_1_1 + 3*beta_1_1*beta_1_9 - beta_1_3*beta_1_4 \
    - beta_1_4*beta_1_5 + 4*alpha_2_1 + 3*alpha_2_6 + alpha_2_8 + beta_2_7 + 3*beta_2_9";
const B0: &str = "4*(alpha_4_1 + beta_4_2)";
const C4: &str = "2*alpha_1_1 + 2*alpha_1_6 + alpha_1_8 + beta_1_9";
const C0: &str = "4*(alpha_5_1 + beta_5_2)";
const D4: &str = "12*alpha_1_1*alpha_1_7 - 6*alpha_1_1*alpha_1_9 - 12*alpha_1_1*beta_1_1 - 18*alpha_1_1*beta_1_6 \
    - 12*alpha_1_2*alpha_1_6 + 7*alpha_1_3*alpha_1_4 - 18*alpha_1_3*beta_1_3 - 20*alpha_1_3*beta_1_5 \
    + 7*alpha_1_4*alpha_1_5 - 4*alpha_1_5*beta_1_3 - 6*alpha_1_5*beta_1_5 - 18*alpha_1_6*alpha_1_9 \
    - 12*alpha_1_6*beta_1_1 - 18*alpha_1_6*beta_1_6 - 6*alpha_1_8*alpha_1_9 - 6*alpha_1_8*beta_1_6 \
    + beta_1_3*beta_1_4 + beta_1_4*beta_1_5 + 12*alpha_2_1 + 12*alpha_2_6 + 6*alpha_2_8 + 6*beta_2_9";
const D0: &str = "24*(alpha_6_1 + beta_6_2)";
const E6: &str = "-3*(alpha_1_1 + alpha_1_6 + alpha_1_8)";
const E0: &str = "-48*(alpha_7_1 + beta_7_2)";

fn criterion_1(rep: &mut Report) {
    let (out, t) = timed(|| run(&collins(4), &collins_stages(4), &RunOptions::default()).expect("collins k=4"));
    let f = &out.favg;
    rep.line("C1", "f1 = pi*r*(alpha_1_1+beta_1_2)", same(&as_poly(&f[0]), &expr("pi*r*(alpha_1_1 + beta_1_2)")), String::new());

    let unstaged = run(&collins(2), &[], &RunOptions::default()).expect("collins k=2");
    let unstaged_f2 = expr(
        "pi*r/2*(pi*alpha_1_1^2 + 2*pi*alpha_1_1*beta_1_2 + pi*beta_1_2^2 + alpha_1_1*alpha_1_2 - alpha_1_1*beta_1_1 \
         + alpha_1_2*beta_1_2 - beta_1_1*beta_1_2 + 2*alpha_2_1 + 2*beta_2_2)",
    );
    rep.line("C1", "f2 before substitution matches the reference closed form", same(&as_poly(&unstaged.favg[1]), &unstaged_f2), String::new());
    let reduced = unstaged_f2.substitute(Param::intern("beta_1_2"), &expr("-alpha_1_1"));
    let ok = same(&as_poly(&f[1]), &reduced) && same(&reduced, &expr("pi*r*(alpha_2_1 + beta_2_2)"));
    rep.line("C1", "f2 under beta_1_2=-alpha_1_1 equals pi*r*(alpha_2_1+beta_2_2)", ok, String::new());

    let f3 = expr(&format!("1/4*pi*r*(({A2})*r^2 + {A0})"));
    rep.line("C1", "f3 = (1/4)*pi*r*(A2*r^2+A0)", same(&as_poly(&f[2]), &f3), String::new());
    let f4 = expr(&format!("1/4*pi*r*(({B2})*r^2 + {B0})"));
    rep.line("C1", "f4 = (1/4)*pi*r*(B2*r^2+B0)", same(&as_poly(&f[3]), &f4), String::new());
    rep.line("C1", "orders 1-4 in under 10 s", t < Duration::from_secs(10), secs(t));
}

fn criterion_2(rep: &mut Report) {
    let (out, t) = timed(|| run(&collins(7), &collins_stages(7), &RunOptions::default()).expect("collins k=7"));
    let f = &out.favg;
    let pc = |c: &str, s: Rational| expr(&format!("pi*({c})")).scale(&s);

    let (f5, f6, f7) = (&f[4], &f[5], &f[6]);
    let ok5 = r_exponents(f5) == [1, 3, 5]
        && same(&r_coeff(f5, 5), &pc(C4, q(1, 4)))
        && same(&r_coeff(f5, 1), &pc(C0, q(1, 4)))
        && f5.pi_degree == 1;
    rep.line("C2", "f5 = (1/4)*pi*r*(C4*r^4+C2*r^2+C0) with reference C4, C0", ok5, String::new());
    let ok6 = r_exponents(f6) == [1, 3, 5]
        && same(&r_coeff(f6, 5), &pc(D4, q(1, 24)))
        && same(&r_coeff(f6, 1), &pc(D0, q(1, 24)))
        && f6.pi_degree == 1;
    rep.line("C2", "f6 = (1/24)*pi*r*(D4*r^4+D2*r^2+D0) with reference D4, D0", ok6, String::new());
    let ok7 = r_exponents(f7) == [1, 3, 5, 7]
        && same(&r_coeff(f7, 7), &pc(E6, q(-1, 48)))
        && same(&r_coeff(f7, 1), &pc(E0, q(-1, 48)))
        && f7.pi_degree == 1;
    rep.line("C2", "f7 = -(1/48)*pi*r*(E6*r^6+E4*r^4+E2*r^2+E0) with reference E6, E0", ok7, String::new());

    let open_coeffs = [(&f[4], 3u32, "C2"), (&f[5], 3, "D2"), (&f[6], 3, "E2"), (&f[6], 5, "E4")];
    let nonzero = open_coeffs.iter().all(|(g, j, _)| !r_coeff(g, *j).is_zero());
    let ranks: Vec<(usize, usize)> = [f5, f6, f7].iter().map(|g| full_rank(g)).collect();
    let full = ranks.iter().all(|(r, n)| r == n);
    let detail = format!("ranks {:?}", ranks);
    rep.line("C2", "C2, D2, E2, E4 nonzero; coefficients of f5..f7 have full independence rank", nonzero && full, detail);

    let bounds: Vec<usize> = f.iter().map(|g| descartes_bound(g, &SignMode::Independent).unwrap().bound).collect();
    let want = [1, 1, 1, 1, 2, 2, 3];
    rep.line("C2", "Descartes bounds for k = 3..7 are 1, 1, 2, 2, 3", bounds[2..] == want[2..], format!("got {:?}", &bounds[2..]));
    rep.known(
        "C2",
        "Descartes bounds for k = 1, 2 are 1, 1",
        bounds[..2] == want[..2],
        format!("got {:?}: f1 and f2 are single-term multiples of r, which have no positive root", &bounds[..2]),
    );
    rep.line("C2", "orders 1-7 in under 10 min", t < Duration::from_secs(600), secs(t));
}

fn criterion_3(rep: &mut Report) {
    let sys = kukles(2);
    let gate = matches!(normalize(&sys), Err(EngineError::F0Nonzero { .. }));
    let a = var("a_1_0_0");
    let b = var("b_1_0_0");
    let r_c = |c: ParamPoly<Rational>, sin: u16, cos: u16, r: i16| TrigSeries::term(
        averaging_core::symcore::TrigKey::new(0, r, sin, cos),
        PiPoly::from(c),
    );
    let want_num = r_c(a.clone(), 0, 1, 1).add(&r_c(b.clone(), 1, 0, 1));
    let want_h2 = r_c(a.neg(), 1, 0, 0).add(&r_c(b, 0, 1, 0));
    let f0 = to_polar_quotient(&sys).check_f0().err();
    let ok = gate && f0.as_ref().is_some_and(|e| e.numerator == want_num && e.h2_0 == want_h2);
    let shown = f0.map(|e| e.to_text()).unwrap_or_default();
    rep.line("C3", "F0 gate fires with F0 = r(a100*C+b100*S)/(r-a100*S+b100*C)", ok, shown);

    let zero = ParamPoly::zero();
    let sys = sys.substitute(Param::intern("a_1_0_0"), &zero).substitute(Param::intern("b_1_0_0"), &zero);
    let stages = [Stage { stage: 2, rule: StageRule::Solve(vec![Param::intern("b_1_1_1")]) }];
    let out = run(&sys, &stages, &RunOptions::default()).expect("kukles k=2");
    let ok = same(&as_poly(&out.favg[0]), &expr("pi*r*(a_1_1_0 + b_1_1_1)"))
        && same(&as_poly(&out.favg[1]), &expr("pi*r*(a_2_1_0 + b_2_1_1)"));
    rep.line("C3", "with a100=b100=0: f1 = pi*r*(a110+b111), f2 = pi*r*(a210+b211)", ok, String::new());
}

fn criterion_4(rep: &mut Report) {
    let (out, t) = timed(|| run(&reversible(10), &reversible_stages(10), &RunOptions::default()).expect("reversible k=10"));
    let f = &out.favg;
    let check = |h: usize, reference: &str| -> bool {
        let maps = maps_up_to(&out, h);
        same(&as_poly(&f[h - 1]), &apply_all(&expr(reference), &maps))
    };
    let k1 = "(a1 + 2*a4)*(a1 - a4 - 1)";
    let ok = check(1, "pi*r*(c_1_1_0 + d_1_0_1)")
        && check(2, "pi*r*(c_2_1_0 + d_2_0_1)")
        && check(3, &format!("pi*r/4*(({k1}*c_1_1_0 - (a4 + 1)*d_1_1_1)*r^2 + 4*(c_3_1_0 + d_3_0_1))"))
        && check(4, &format!("pi*r/4*(({k1}*c_2_1_0 - (a4 + 1)*d_2_1_1)*r^2 + 4*(c_4_1_0 + d_4_0_1))"));
    rep.line("C4", "f1..f4 with reference A2, A0, B2, B0", ok, String::new());

    // f5 carries 1/(a4+1)^2; compare 24(a4+1)^2 f5 with the reference bracket.
    let k4 = "a1*(a1 - a4)*(a1 + 2*a4)*(a1 - 3*a4 - 5)";
    let c2 = format!(
        "-6*a1*{k1}*(a1 + a4 - 1)*c_1_1_0^3 + 6*(a4 + 1)^2*{k1}*c_3_1_0 - 6*(a4 + 1)^3*d_3_1_1"
    );
    let c0 = "24*(a4 + 1)^2*(c_5_1_0 + d_5_0_1)";
    let maps5 = maps_up_to(&out, 5);
    let lhs5 = as_poly(&f[4]).mul(&expr("24*(a4 + 1)^2"));
    let f5_with = |c4_param: &str| apply_all(&expr(&format!("pi*r*(({k4}*(a4 + 1)^2*{c4_param})*r^4 + ({c2})*r^2 + {c0})")), &maps5);
    let lower = |p: &ParamPoly<Rational>, j: u32| -> ParamPoly<Rational> {
        let r = Param::intern("r");
        p.coeff_of(r, j)
    };
    let ok_c2c0 = [1, 3].iter().all(|&j| same(&lower(&lhs5, j), &lower(&f5_with("c_1_1_0"), j)));
    rep.line("C4", "f5 with reference C2, C0 (over 24(a4+1)^2)", ok_c2c0, String::new());
    rep.known(
        "C4",
        "f5 with reference C4 (factor c_2_1_0)",
        same(&lower(&lhs5, 5), &lower(&f5_with("c_2_1_0"), 5)),
        "the r^5 coefficient is linear in c_1_1_0, as in D4k with k = 5".into(),
    );
    rep.line(
        "C4",
        "f5 with C4 read as a1(a4+1)^2(a1-a4)(a1+2a4)(a1-3a4-5)c_1_1_0",
        same(&lower(&lhs5, 5), &lower(&f5_with("c_1_1_0"), 5)),
        String::new(),
    );

    let mut all_k = true;
    let mut bad = Vec::new();
    for k in 6..=10 {
        let reference = format!(
            "pi*r/24*(({k4}*c_{}_1_0)*r^4 + (6*{k1}*c_{}_1_0 - 6*(a4 + 1)*d_{}_1_1)*r^2 + 24*(c_{k}_1_0 + d_{k}_0_1))",
            k - 4,
            k - 2,
            k - 2
        );
        if !check(k, &reference) {
            all_k = false;
            bad.push(k);
        }
    }
    rep.line("C4", "f_k = (pi*r/24)(D4k*r^4+D2k*r^2+D0k) for k = 6..10", all_k, if bad.is_empty() { String::new() } else { format!("mismatch at {bad:?}") });
    rep.line("C4", "k = 10 in under 30 min", t < Duration::from_secs(1800), secs(t));
}

fn criterion_5(rep: &mut Report) {
    type T = (i64, u32, u32, Vec<u32>);
    let expected: [Vec<T>; 5] = [
        vec![(1, 1, 0, vec![])],
        vec![(2, 2, 0, vec![]), (2, 1, 1, vec![1])],
        vec![(6, 3, 0, vec![]), (6, 2, 1, vec![1]), (3, 1, 1, vec![0, 1]), (3, 1, 2, vec![2])],
        vec![
            (24, 4, 0, vec![]),
            (24, 3, 1, vec![1]),
            (12, 2, 1, vec![0, 1]),
            (12, 2, 2, vec![2]),
            (4, 1, 1, vec![0, 0, 1]),
            (12, 1, 2, vec![1, 1]),
            (4, 1, 3, vec![3]),
        ],
        vec![
            (120, 5, 0, vec![]),
            (120, 4, 1, vec![1]),
            (60, 3, 1, vec![0, 1]),
            (60, 3, 2, vec![2]),
            (20, 2, 1, vec![0, 0, 1]),
            (60, 2, 2, vec![1, 1]),
            (20, 2, 3, vec![3]),
            (5, 1, 1, vec![0, 0, 0, 1]),
            (15, 1, 2, vec![0, 2]),
            (20, 1, 2, vec![1, 0, 1]),
            (30, 1, 3, vec![2, 1]),
            (5, 1, 4, vec![4]),
        ],
    ];
    let mut ok = true;
    for (k, want) in (1..=5).zip(expected.iter()) {
        let mut got: Vec<T> = emit_integrand_formula(k)
            .terms
            .iter()
            .map(|t| (t.coeff.as_small().map(|(n, d)| if d == 1 { n } else { i64::MIN }).unwrap_or(i64::MIN), t.f_index, t.deriv, t.y_powers.clone()))
            .collect();
        let mut want = want.clone();
        got.sort();
        want.sort();
        ok &= got == want;
    }
    rep.line("C5", "integrand formulas k = 1..5 term-for-term (12 terms at k = 5)", ok, String::new());
}

fn criterion_6(rep: &mut Report) {
    let table: [[usize; 7]; 4] = [[0, 0, 1, 1, 1, 2, 2], [0, 0, 1, 1, 2, 2, 2], [0, 0, 1, 1, 2, 2, 2], [0, 0, 1, 1, 2, 2, 2]];
    let t = Instant::now();
    let mut rows = Vec::new();
    let (mut early, mut late) = (true, true);
    for (which, want) in (1..=4).zip(table.iter()) {
        let got: Vec<usize> = match run(&loud(which, 7), &auto_stages(7), &RunOptions::default()) {
            Ok(out) => out.favg.iter().map(|f| descartes_bound(f, &SignMode::Independent).unwrap().bound).collect(),
            Err(e) => {
                rows.push(format!("S{which}: {e}"));
                early = false;
                late = false;
                continue;
            }
        };
        early &= got[..4] == want[..4];
        late &= got[4..] == want[4..];
        rows.push(format!("S{which}: {got:?}"));
    }
    rep.line("C6", "Loud centers S1..S4: bounds 0, 0, 1, 1 at orders 1-4", early, rows.join("; "));
    rep.line("C6", "Loud centers S1..S4: bounds 1 2 2 / 2 2 2 at orders 5-7", late, secs(t.elapsed()));
}

fn criterion_7(rep: &mut Report) {
    // quadrature oracle
    let mut worst: f64 = 0.0;
    for i in 0..=6u16 {
        for j in 0..=6u16 {
            for k in 0..=6u16 {
                for theta in [0.5, 1.0, 2.5, 6.0] {
                    let exact = eval_monomial_integral(i, j, k, theta);
                    let num = quadrature(|s| s.powi(i as i32) * s.sin().powi(j as i32) * s.cos().powi(k as i32), theta, 64);
                    worst = worst.max((exact - num).abs());
                }
            }
        }
    }
    rep.line("C7", "trig integrals match quadrature for i,j,k <= 6 (tol 1e-9)", worst < 1e-9, format!("max err {worst:.1e}"));

    // recursion via Bell table vs tuple-sum formula, and structural bounds
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut eq_ok, mut bounds_ok) = (true, true);
    for _ in 0..50 {
        let sys = random_system(&mut rng, 4);
        let n2 = sys.n2();
        let out = run(&sys, &[], &RunOptions { keep_last_y: true }).expect("random system");
        let fs = normalize(&sys).unwrap();
        let mut ys: Vec<TrigSeries<Rational>> = Vec::new();
        for i in 1..=4 {
            let y = integrate(&emit_integrand_formula(i as u32).instantiate(&fs.f, &ys));
            eq_ok &= y == out.ys[i - 1];
            ys.push(y);
            let f = &out.favg[i - 1];
            bounds_ok &= f.nu as usize <= i - 1 && f.n <= i as u32 * n2 && f.pi_degree <= i;
        }
    }
    rep.line("C7", "Bell recursion equals tuple-sum formula for i <= 4 on 50 random systems", eq_ok, String::new());
    rep.line("C7", "nu_i <= i-1, N_i <= i*n2, pi-degree <= i on the same systems", bounds_ok, String::new());

    // FTC round trip and linearity
    let mut ftc = true;
    for _ in 0..100 {
        let a = random_trig(&mut rng, 6, true);
        let b = random_trig(&mut rng, 6, true);
        let c = q(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let ia = integrate(&a);
        ftc &= ia.diff_theta() == a.reduce_cos();
        ftc &= ia.at_theta_zero().is_empty();
        ftc &= integrate(&a.add(&b).scale(&c)) == ia.add(&integrate(&b)).scale(&c);
    }
    rep.line("C7", "d/dtheta of the antiderivative is the integrand; linearity", ftc, String::new());

    // ring axioms on random series
    let mut ring = true;
    for _ in 0..60 {
        let (a, b, c) = (random_trig(&mut rng, 4, true), random_trig(&mut rng, 4, true), random_trig(&mut rng, 4, false));
        ring &= a.mul(&b) == b.mul(&a);
        ring &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        ring &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        ring &= a.add(&b).sub(&b) == a.reduce_cos();
        ring &= a.mul(&TrigSeries::one()) == a.reduce_cos();
    }
    rep.line("C7", "ring axioms on random trigonometric series", ring, String::new());
}

fn criterion_8(rep: &mut Report) {
    let values = HashMap::from([(Param::intern("beta_1_7"), q(1, 1)), (Param::intern("alpha_3_1"), q(-1, 4))]);
    let sys = collins(3);
    let f3 = run(&sys, &collins_stages(3), &RunOptions::default()).unwrap().favg[2].clone();
    let eps = [0.02, 0.01, 0.005];
    let ladder = eps_ladder(&sys, &values, Some(&f3), &eps, (0.55, 1.7));
    let mut ok = true;
    let mut gaps = Vec::new();
    for (e, w) in eps.iter().zip(&ladder) {
        match w {
            Ok(w) => {
                let gap = (w.r_fixed - 1.0).abs();
                ok &= gap <= 5.0 * e && (w.rbar_predicted - 1.0).abs() < 1e-9;
                gaps.push(format!("eps {e}: |r-1| = {gap:.2e}"));
            }
            Err(err) => {
                ok = false;
                gaps.push(format!("eps {e}: {err}"));
            }
        }
    }
    rep.line("C8", "fixed point near r = 1 with |r_fixed - 1| <= 5*eps", ok, gaps.join(", "));

    let ns = NumericSystem::new(&sys, &values, 0.0);
    let id = [0.3, 1.0, 2.0].iter().all(|&r0| (poincare_return(&ns, r0).unwrap() - r0).abs() <= 1e-10);
    rep.line("C8", "eps = 0 gives the identity map to 1e-10", id, String::new());

    let sys1 = collins(1);
    let f1 = run(&sys1, &[], &RunOptions::default()).unwrap().favg[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 10 {
        let vals: HashMap<Param, Rational> = sys1.params().into_iter().map(|p| (p, q(rng.gen_range(-8..=8), 8))).collect();
        let lin = vals[&Param::intern("alpha_1_1")].clone() + vals[&Param::intern("beta_1_2")].clone();
        if lin.abs() < q(1, 4) {
            continue;
        }
        n += 1;
        let ns = NumericSystem::new(&sys1, &vals, 1e-4).with_prediction(&f1, &vals);
        let r0 = 0.5 + 0.1 * n as f64;
        let d = displacement(&ns, r0).unwrap() / 1e-4;
        let p = ns.predicted(r0).unwrap();
        worst = worst.max(((d - p) / p).abs());
    }
    rep.line("C8", "displacement/eps matches f1 within 1% at eps = 1e-4 (10 instantiations)", worst < 0.01, format!("max rel err {worst:.2e}"));
}

#[test]
fn acceptance() {
    let mut rep = Report::default();
    criterion_1(&mut rep);
    criterion_2(&mut rep);
    criterion_3(&mut rep);
    criterion_4(&mut rep);
    criterion_5(&mut rep);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    assert!(rep.failures.is_empty(), "failed: {:#?}", rep.failures);
}

/// The literal Descartes expectation for f1 and f2. Both are nonzero
/// constant multiples of `r`, so the sign-variation count is 0.
#[test]
#[ignore = "expectation contradicts f1 = pi*r*(alpha_1_1+beta_1_2) having no positive root"]
fn descartes_bounds_k1_k2_as_listed() {
    let out = run(&collins(2), &collins_stages(2), &RunOptions::default()).unwrap();
    let b: Vec<usize> = out.favg.iter().map(|f| descartes_bound(f, &SignMode::Independent).unwrap().bound).collect();
    assert_eq!(b, vec![1, 1]);
}

/// The reversible-system C4 as listed, with factor `c_2_1_0`.
#[test]
#[ignore = "listed coefficient carries c_2_1_0 where the computed one has c_1_1_0"]
fn reversible_c4_as_listed() {
    let out = run(&reversible(5), &reversible_stages(5), &RunOptions::default()).unwrap();
    let maps = maps_up_to(&out, 5);
    let listed = expr("pi*r*a1*(a4 + 1)^2*(a1 - a4)*(a1 + 2*a4)*(a1 - 3*a4 - 5)*c_2_1_0*r^4");
    let lhs = as_poly(&out.favg[4]).mul(&expr("24*(a4 + 1)^2"));
    let r = Param::intern("r");
    assert!(same(&lhs.coeff_of(r, 5), &apply_all(&listed, &maps).coeff_of(r, 5)));
}
