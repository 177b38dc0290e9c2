//! Job orchestration behind the `averaging` binary.

pub mod config;
pub mod report;

use averaging_core::analysis::{descartes_bound, independence_rank, AveragedFunction};
use averaging_core::averaging::{run, RunOptions};
use averaging_core::symcore::{Param, PiPoly, Rational};
use averaging_core::verify::eps_ladder;
use averaging_core::EngineError;

use config::{ConfigError, JobConfig};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_F0_NONZERO: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_STRUCTURAL: i32 = 4;

#[derive(Clone, Debug, Default)]
pub struct JobOptions {
    /// Overrides `system.order`.
    pub order: Option<usize>,
    pub show_y: bool,
    pub descartes: bool,
    pub seed: u64,
    /// Run the ε ladder of the `[verify]` section.
    pub verify: bool,
}

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

fn error_kind(e: &EngineError) -> (&'static str, i32) {
    match e {
        EngineError::F0Nonzero { .. } => ("F0Nonzero", EXIT_F0_NONZERO),
        EngineError::StructuralViolation { .. } => ("StructuralViolation", EXIT_STRUCTURAL),
        EngineError::Parse(_) => ("Parse", EXIT_CONFIG),
        EngineError::NotCanonicalCenter(_) => ("NotCanonicalCenter", EXIT_CONFIG),
        EngineError::InvalidSystem(_) => ("InvalidSystem", EXIT_CONFIG),
        EngineError::BadStage { .. } => ("BadStage", EXIT_CONFIG),
        EngineError::NotLinearlySolvable { .. } => ("NotLinearlySolvable", EXIT_CONFIG),
        EngineError::CyclicSubstitution(_) => ("CyclicSubstitution", EXIT_CONFIG),
        EngineError::IndeterminateSign(_) => ("IndeterminateSign", EXIT_FAILURE),
        EngineError::DenominatorNotUnit => ("DenominatorNotUnit", EXIT_FAILURE),
        EngineError::Arity { .. } => ("Arity", EXIT_FAILURE),
    }
}

pub fn config_failure(e: &ConfigError) -> Outcome {
    let mut report = Report::empty();
    report.error = Some(ErrorDoc { kind: "Config".into(), message: e.to_string() });
    Outcome { report, exit: EXIT_CONFIG }
}

fn fail(mut report: Report, e: &EngineError) -> Outcome {
    let (kind, exit) = error_kind(e);
    report.error = Some(ErrorDoc { kind: kind.into(), message: e.to_string() });
    Outcome { report, exit }
}

fn order_doc(
    h: usize,
    f: &AveragedFunction<Rational>,
    big_f: &averaging_core::TrigSeriesQ,
    y: Option<&averaging_core::TrigSeriesQ>,
) -> OrderDoc {
    OrderDoc {
        h,
        big_f: big_f.to_text(),
        y: y.map(|s| s.to_text()),
        f: f.render_text(),
        nu: f.nu,
        n: f.n,
        pi_degree: f.pi_degree,
        fbar: f.fbar.iter().map(|(j, c)| (*j, c.to_text())).collect(),
        descartes: None,
        independence_rank: None,
        latex: OrderLatex { big_f: big_f.to_latex(), y: y.map(|s| s.to_latex()), f: f.render_latex() },
    }
}

pub fn run_job(cfg: &JobConfig, opts: &JobOptions) -> Outcome {
    let order = opts.order.unwrap_or(cfg.system.order);
    let mut report = Report::empty();
    let (sys, stages, sign_mode) = match (cfg.system(order), cfg.stages(order), cfg.sign_mode()) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return config_failure(&e),
    };
    if order == 0 {
        return config_failure(&ConfigError::Invalid("order must be at least 1".into()));
    }
    report.system = Some(SystemDoc {
        dx: sys.p.to_text(),
        dy: sys.q.to_text(),
        order,
        perturbations: sys
            .perturbations
            .iter()
            .enumerate()
            .filter(|(_, p)| !(p.dx.is_zero() && p.dy.is_zero()))
            .map(|(i, p)| PerturbationDoc { eps_order: i + 1, dx: p.dx.to_text(), dy: p.dy.to_text() })
            .collect(),
    });
    let show_y = opts.show_y || cfg.analysis.show_y;
    let out = match run(&sys, &stages, &RunOptions { keep_last_y: show_y }) {
        Ok(out) => out,
        Err(e) => return fail(report, &e),
    };
    report.substitutions = out
        .applied
        .iter()
        .map(|(stage, m)| StageDoc {
            stage: *stage,
            assignments: m
                .assignments
                .iter()
                .map(|(p, v)| AssignmentDoc {
                    param: p.to_string(),
                    value: v.to_text(),
                    latex: format!("{} = {}", p.latex(), v.to_latex()),
                })
                .collect(),
        })
        .collect();
    let descartes = opts.descartes || cfg.analysis.descartes;
    for (i, f) in out.favg.iter().enumerate() {
        let h = i + 1;
        let mut doc = order_doc(h, f, out.fs.get(h), if show_y { out.ys.get(i) } else { None });
        if descartes {
            match descartes_bound(f, &sign_mode) {
                Ok(d) => doc.descartes = Some(DescartesDoc { pattern: d.pattern, variations: d.variations, bound: d.bound }),
                Err(e) => {
                    report.orders.push(doc);
                    return fail(report, &e);
                }
            }
        }
        if !cfg.analysis.independence_params.is_empty() {
            let params: Vec<Param> = if cfg.analysis.independence_params.iter().any(|p| p == "*") {
                f.params().into_iter().collect()
            } else {
                cfg.analysis.independence_params.iter().map(|p| Param::intern(p)).collect()
            };
            let coeffs: Vec<PiPoly<Rational>> = f.fbar.values().cloned().collect();
            doc.independence_rank = Some(independence_rank(&coeffs, &params, opts.seed));
        }
        report.orders.push(doc);
    }
    if opts.verify {
        let Some(v) = &cfg.verify else {
            return config_failure(&ConfigError::Invalid("verify needs a [verify] section".into()));
        };
        let values = match cfg.values() {
            Ok(v) => v,
            Err(e) => return config_failure(&e),
        };
        let prediction = out.favg.last();
        let ladder = eps_ladder(&sys, &values, prediction, &v.eps, (v.bracket[0], v.bracket[1]));
        report.verify = Some(
            v.eps
                .iter()
                .zip(ladder)
                .map(|(eps, w)| match w {
                    Ok(w) => WitnessDoc {
                        eps: *eps,
                        r_fixed: Some(w.r_fixed),
                        rbar_predicted: w.rbar_predicted.is_finite().then_some(w.rbar_predicted),
                        residual: Some(w.residual),
                        error: None,
                    },
                    Err(e) => WitnessDoc { eps: *eps, r_fixed: None, rbar_predicted: None, residual: None, error: Some(e.to_string()) },
                })
                .collect(),
        );
    }
    Outcome { report, exit: EXIT_OK }
}

/// Parses `k=5` or `5`.
pub fn parse_formula_spec(s: &str) -> Result<u32, String> {
    let v = s.trim().strip_prefix("k=").unwrap_or(s.trim());
    match v.trim().parse::<u32>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("expected k=N with N >= 1, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let f0 = EngineError::F0Nonzero { numerator: "r".into(), denominator: "r".into() };
        assert_eq!(error_kind(&f0).1, EXIT_F0_NONZERO);
        let sv = EngineError::StructuralViolation { order: 2, detail: "pole".into() };
        assert_eq!(error_kind(&sv), ("StructuralViolation", EXIT_STRUCTURAL));
        assert_eq!(error_kind(&EngineError::BadStage { stage: 9, order: 2 }).1, EXIT_CONFIG);
    }

    #[test]
    fn formula_spec() {
        assert_eq!(parse_formula_spec("k=5"), Ok(5));
        assert_eq!(parse_formula_spec("3"), Ok(3));
        assert!(parse_formula_spec("k=0").is_err());
        assert!(parse_formula_spec("five").is_err());
    }
}
