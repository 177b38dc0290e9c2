//! The order-by-order computation of `y_i` and `f_i`, with staged
//! parameter substitutions between orders.

use super::bell::{factorial, BellTable};
use crate::analysis::{auto_eliminate, normalize_f, solve_linear_params, AveragedFunction, SubstitutionMap};
use crate::error::{EngineError, Result};
use crate::normalform::{normalize, FSeries, SystemSpec};
use crate::symcore::{Param, ParamPoly, RLaurent, Scalar, TrigSeries};
use crate::trigcalc::{integrate, integrate_full_period};

/// How the substitutions for one stage are obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum StageRule<T: Scalar> {
    /// Explicit assignments `param = expr`.
    Assign(Vec<(Param, ParamPoly<T>)>),
    /// Solve `f_{h-1} ≡ 0` for these parameters, in order.
    Solve(Vec<Param>),
    /// Let the engine pick the eliminations for `f_{h-1} ≡ 0`.
    Auto,
}

/// Substitutions applied before computing `f_stage`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage<T: Scalar> {
    pub stage: usize,
    pub rule: StageRule<T>,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Build `y_k` for the last order too (otherwise only `y_k(2π)` is formed).
    pub keep_last_y: bool,
}

#[derive(Clone, Debug)]
pub struct AveragingRun<T: Scalar> {
    /// Normal form after all substitutions.
    pub fs: FSeries<T>,
    /// `ys[i - 1]` is `y_i`; the last entry is absent unless requested.
    pub ys: Vec<TrigSeries<T>>,
    /// `favg[i - 1]` is `f_i` as computed (before the substitutions of later stages).
    pub favg: Vec<AveragedFunction<T>>,
    /// Substitutions applied at each stage, `(stage, map)`.
    pub applied: Vec<(usize, SubstitutionMap<T>)>,
}

/// Bracketed integrand of order `i`: `F_i + Σ (1/l!) ∂^m F_{i-l} B_{l,m}`, so
/// that `y_i = i! ∫₀^θ` of it and `f_i = ∫₀^{2π}` of it.
fn bracket<T: Scalar>(i: usize, fs: &FSeries<T>, bell: &BellTable<TrigSeries<T>>) -> TrigSeries<T> {
    let mut acc = fs.get(i).clone();
    for l in 1..i {
        let fl = fs.get(i - l);
        if fl.is_zero() {
            continue;
        }
        let w = T::from_rational(&factorial(l as u32).recip());
        for m in 1..=l {
            let b = bell.get(l, m);
            if b.is_zero() {
                continue;
            }
            let d = fl.diff_r(m as u32);
            acc.add_mul_scaled(&d, b, &w);
        }
    }
    acc
}

pub fn compute_y<T: Scalar>(i: usize, fs: &FSeries<T>, prev: &[TrigSeries<T>]) -> TrigSeries<T> {
    let mut bell = BellTable::new();
    for _ in 1..i {
        bell.extend(prev);
    }
    integrate(&bracket(i, fs, &bell)).scale(&T::from_rational(&factorial(i as u32)))
}

/// `f_i = eval_at_2pi(y_i) / i!`, normalized.
pub fn averaged_function<T: Scalar>(i: usize, y_at_2pi: &RLaurent<T>, n2: u32) -> Result<AveragedFunction<T>> {
    let inv = T::from_rational(&factorial(i as u32).recip());
    let scaled: RLaurent<T> = y_at_2pi.iter().map(|(e, c)| (*e, c.scale(&inv))).collect();
    normalize_f(&scaled, i, n2)
}

fn derive_map<T: Scalar>(
    rule: &StageRule<T>,
    stage: usize,
    prev: Option<&AveragedFunction<T>>,
) -> Result<SubstitutionMap<T>> {
    let prev = || prev.ok_or(EngineError::BadStage { stage, order: stage });
    let map = match rule {
        StageRule::Assign(list) => SubstitutionMap { assignments: list.clone() },
        StageRule::Solve(params) => solve_linear_params(prev()?, params)?,
        StageRule::Auto => auto_eliminate(prev()?)?,
    };
    map.triangularize()
}

/// Runs orders `1..=sys.order`, applying the stage-`h` substitutions to the
/// normal form and to all intermediate series before computing `f_h`.
pub fn run<T: Scalar>(sys: &SystemSpec<T>, stages: &[Stage<T>], opts: &RunOptions) -> Result<AveragingRun<T>> {
    let k = sys.order;
    for st in stages {
        if st.stage < 1 || st.stage > k {
            return Err(EngineError::BadStage { stage: st.stage, order: k });
        }
    }
    let mut fs = normalize(sys)?;
    let n2 = fs.n2;
    let mut ys: Vec<TrigSeries<T>> = Vec::new();
    let mut favg: Vec<AveragedFunction<T>> = Vec::new();
    let mut bell: BellTable<TrigSeries<T>> = BellTable::new();
    let mut applied = Vec::new();
    for h in 1..=k {
        let mut map = SubstitutionMap::new();
        // later rules of the same stage see the earlier ones applied
        let mut prev = favg.last().cloned();
        for st in stages.iter().filter(|s| s.stage == h) {
            let m = derive_map(&st.rule, h, prev.as_ref())?;
            fs = m.apply(&fs);
            for y in ys.iter_mut() {
                *y = m.apply(y);
            }
            bell.map_in_place(|b| m.apply(b));
            prev = prev.map(|p| m.apply(&p));
            map.extend(&m);
        }
        if !map.is_empty() {
            applied.push((h, map));
        }
        if h >= 2 {
            bell.extend(&ys);
        }
        let br = bracket(h, &fs, &bell);
        let fh = normalize_f(&integrate_full_period(&br), h, n2)?;
        favg.push(fh);
        if h < k || opts.keep_last_y {
            ys.push(integrate(&br).scale(&T::from_rational(&factorial(h as u32))));
        }
    }
    Ok(AveragingRun { fs, ys, favg, applied })
}
