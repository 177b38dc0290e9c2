//! Ready-made systems used by the tests, the benchmarks and the CLI examples.

use crate::averaging::{Stage, StageRule};
use crate::normalform::{Perturbation, SystemSpec};
use crate::symcore::{parse_poly, Param, ParamPoly, Rational, XYPoly};

type Q = Rational;

fn poly(s: &str) -> XYPoly<Q> {
    parse_poly(s).unwrap_or_else(|e| panic!("fixture polynomial {s:?}: {e}"))
}

fn spec(p: &str, q: &str, perts: Vec<(String, String)>, order: usize) -> SystemSpec<Q> {
    let perts = perts.into_iter().map(|(a, b)| Perturbation { dx: poly(&a), dy: poly(&b) }).collect();
    SystemSpec::new(poly(p), poly(q), perts, order).expect("fixture system is canonical")
}

/// `Σ prefix_s_j · m_j` over the given monomials.
fn generic(prefix: &str, s: usize, monomials: &[(&str, String)]) -> String {
    let terms: Vec<String> = monomials.iter().map(|(m, idx)| format!("{prefix}_{s}_{idx}*{m}")).collect();
    terms.join(" + ")
}

fn solve(stage: usize, names: &[&str]) -> Stage<Q> {
    Stage { stage, rule: StageRule::Solve(names.iter().map(|n| Param::intern(n)).collect()) }
}

const COLLINS_MONOMIALS: [&str; 9] = ["x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"];

/// `ẋ = −y + x²y`, `ẏ = x + xy²` with a generic cubic perturbation
/// `ε^s (Σ α_{s,j} m_j, Σ β_{s,j} m_j)` at every order.
pub fn collins(order: usize) -> SystemSpec<Q> {
    let mons: Vec<(&str, String)> = COLLINS_MONOMIALS.iter().enumerate().map(|(j, m)| (*m, (j + 1).to_string())).collect();
    let perts = (1..=order).map(|s| (generic("alpha", s, &mons), generic("beta", s, &mons))).collect();
    spec("-y + x^2*y", "x + x*y^2", perts, order)
}

/// Eliminations that make `f_1, …, f_{k-1}` vanish for [`collins`].
pub fn collins_stages(order: usize) -> Vec<Stage<Q>> {
    let all = [
        solve(2, &["beta_1_2"]),
        solve(3, &["beta_2_2"]),
        solve(4, &["beta_1_7", "beta_3_2"]),
        solve(5, &["beta_2_7", "beta_4_2"]),
        solve(6, &["beta_1_9", "beta_3_7", "beta_5_2"]),
        solve(7, &["beta_2_9", "beta_4_7", "beta_6_2"]),
    ];
    all.into_iter().filter(|s| s.stage <= order).collect()
}

/// All monomials `x^{j-i} y^i` with `j ≤ deg`, paired with the index `j_i`.
fn full_monomials(deg: u32) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for j in 0..=deg {
        for i in 0..=j {
            let m = match (j - i, i) {
                (0, 0) => "1".to_string(),
                (a, 0) => format!("x^{a}"),
                (0, b) => format!("y^{b}"),
                (a, b) => format!("x^{a}*y^{b}"),
            };
            out.push((m, format!("{j}_{i}")));
        }
    }
    out
}

/// `ẋ = −y`, `ẏ = x + a x⁵y + b x³y³ + c xy⁵` with a full degree-6
/// perturbation, constant terms included.
pub fn kukles(order: usize) -> SystemSpec<Q> {
    let mons = full_monomials(6);
    let mons: Vec<(&str, String)> = mons.iter().map(|(m, i)| (m.as_str(), i.clone())).collect();
    let perts = (1..=order).map(|s| (generic("a", s, &mons), generic("b", s, &mons))).collect();
    spec("-y", "x + a*x^5*y + b*x^3*y^3 + c*x*y^5", perts, order)
}

/// `ẋ = −y + a₁xy + Σ ε^s c_{s,1,0} x`, `ẏ = x + x² + a₄y² + Σ ε^s (d_{s,0,1} y + d_{s,1,1} xy)`.
pub fn reversible(order: usize) -> SystemSpec<Q> {
    let perts = (1..=order).map(|s| (format!("c_{s}_1_0*x"), format!("d_{s}_0_1*y + d_{s}_1_1*x*y"))).collect();
    spec("-y + a1*x*y", "x + x^2 + a4*y^2", perts, order)
}

/// Keeps the eliminations for [`reversible`] polynomial in `a1`, `a4`:
/// the pair `(c_{s,1,0}, d_{s,1,1})` is written as
/// `((a4 + 1) t_s, (a1 + 2a4)(a1 − a4 − 1) t_s)`.
pub fn reversible_parametrization(s: usize) -> Vec<(Param, ParamPoly<Q>)> {
    let a1 = ParamPoly::var(Param::intern("a1"));
    let a4 = ParamPoly::var(Param::intern("a4"));
    let one = ParamPoly::one();
    let t = ParamPoly::var(Param::intern(&format!("t_{s}")));
    let c = a4.add(&one).mul(&t);
    let d = a1.add(&a4.scale(&Q::from_integer(2))).mul(&a1.sub(&a4).sub(&one)).mul(&t);
    vec![(Param::intern(&format!("c_{s}_1_0")), c), (Param::intern(&format!("d_{s}_1_1")), d)]
}

/// The four quadratic systems with a linear-plus-quadratic perturbation
/// `c_{s,i,l} x^i y^l`, `d_{s,i,l} x^i y^l` (`1 ≤ i + l ≤ 2`).
pub fn loud(which: usize, order: usize) -> SystemSpec<Q> {
    let (p, q) = match which {
        1 => ("-y + x^2 - y^2", "x + 2*x*y"),
        2 => ("-y + x^2", "x + x*y"),
        3 => ("-y - 4/3*x^2", "x - 16/3*x*y"),
        4 => ("-y + 16/3*x^2 - 4/3*y^2", "x + 8/3*x*y"),
        _ => panic!("loud system index must be 1..=4"),
    };
    let mut mons = Vec::new();
    for j in 1..=2u32 {
        for i in (0..=j).rev() {
            let l = j - i;
            let m = match (i, l) {
                (a, 0) => format!("x^{a}"),
                (0, b) => format!("y^{b}"),
                (a, b) => format!("x^{a}*y^{b}"),
            };
            mons.push((m, format!("{i}_{l}")));
        }
    }
    let mons: Vec<(&str, String)> = mons.iter().map(|(m, i)| (m.as_str(), i.clone())).collect();
    let perts = (1..=order).map(|s| (generic("c", s, &mons), generic("d", s, &mons))).collect();
    spec(p, q, perts, order)
}

/// Automatic elimination at every stage `2..=order`.
pub fn auto_stages(order: usize) -> Vec<Stage<Q>> {
    (2..=order).map(|stage| Stage { stage, rule: StageRule::Auto }).collect()
}

/// Eliminations for [`reversible`]. `f_1 = f_2 = 0` by `d_{s,0,1}`;
/// `f_3 = f_4 = 0` through the parametrization of `(c_{s,1,0}, d_{s,1,1})`
/// and `d_{s+2,0,1}`. From stage 6 on, the leading coefficient of
/// `f_{h-1}` is a nonconstant multiple of `t_{h-5}`, which is set to zero.
pub fn reversible_stages(order: usize) -> Vec<Stage<Q>> {
    let mut out = vec![solve(2, &["d_1_0_1"]), solve(3, &["d_2_0_1"])];
    for stage in 4..=order {
        if stage >= 6 {
            let t = Param::intern(&format!("t_{}", stage - 5));
            out.push(Stage { stage, rule: StageRule::Assign(vec![(t, ParamPoly::zero())]) });
        }
        out.push(Stage { stage, rule: StageRule::Assign(reversible_parametrization(stage - 3)) });
        out.push(solve(stage, &[&format!("d_{}_0_1", stage - 1)]));
    }
    out.into_iter().filter(|s| s.stage <= order).collect()
}
