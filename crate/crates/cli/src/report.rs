//! Report documents and their text, LaTeX and JSON renderings.

use std::fmt::Write as _;

use averaging_core::averaging::AbstractFormula;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub fn engine_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub engine_version: String,
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitutions: Vec<StageDoc>,
    #[serde(default)]
    pub orders: Vec<OrderDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<Vec<WitnessDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub dx: String,
    pub dy: String,
    pub order: usize,
    pub perturbations: Vec<PerturbationDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationDoc {
    pub eps_order: usize,
    pub dx: String,
    pub dy: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageDoc {
    pub stage: usize,
    pub assignments: Vec<AssignmentDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDoc {
    pub param: String,
    pub value: String,
    pub latex: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderDoc {
    pub h: usize,
    /// `F_h` with every substitution applied.
    #[serde(rename = "F")]
    pub big_f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub f: String,
    pub nu: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub pi_degree: usize,
    /// `(exponent of r, coefficient)` of `f̄_h`.
    pub fbar: Vec<(u32, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descartes: Option<DescartesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence_rank: Option<usize>,
    pub latex: OrderLatex,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderLatex {
    #[serde(rename = "F")]
    pub big_f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescartesDoc {
    pub pattern: Vec<(u32, i8)>,
    pub variations: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub eps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_fixed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rbar_predicted: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaReport {
    pub engine_version: String,
    pub schema_version: u32,
    pub k: u32,
    pub formula: String,
    pub terms: Vec<TermDoc>,
    pub latex: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub f_index: u32,
    pub deriv: u32,
    pub y_powers: Vec<u32>,
}

impl FormulaReport {
    pub fn new(f: &AbstractFormula) -> Self {
        FormulaReport {
            engine_version: engine_version(),
            schema_version: SCHEMA_VERSION,
            k: f.k,
            formula: f.to_text(),
            terms: f
                .terms
                .iter()
                .map(|t| TermDoc { coeff: t.coeff.to_string(), f_index: t.f_index, deriv: t.deriv, y_powers: t.y_powers.clone() })
                .collect(),
            latex: f.to_latex(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!("FF_{}(s,z) = {}\n", self.k, self.formula),
            Format::Latex => format!("\\mathbb{{F}}_{{{}}}(s,z) = {}\n", self.k, self.latex),
            Format::Json => to_json(self),
        }
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents serialize");
    s.push('\n');
    s
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

impl Report {
    pub fn empty() -> Self {
        Report {
            engine_version: engine_version(),
            schema_version: SCHEMA_VERSION,
            system: None,
            substitutions: Vec::new(),
            orders: Vec::new(),
            verify: None,
            error: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Latex => self.render_latex(),
            Format::Json => to_json(self),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(sys) = &self.system {
            let _ = writeln!(out, "system: x' = {}, y' = {}, order {}", sys.dx, sys.dy, sys.order);
            for p in &sys.perturbations {
                let _ = writeln!(out, "perturbation eps^{}: dx = {}, dy = {}", p.eps_order, p.dx, p.dy);
            }
        }
        for st in &self.substitutions {
            let list: Vec<String> = st.assignments.iter().map(|a| format!("{} = {}", a.param, a.value)).collect();
            let _ = writeln!(out, "stage {}: {}", st.stage, list.join(", "));
        }
        for o in &self.orders {
            let _ = writeln!(out, "order {}", o.h);
            let _ = writeln!(out, "  F_{} = {}", o.h, o.big_f);
            if let Some(y) = &o.y {
                let _ = writeln!(out, "  y_{} = {}", o.h, y);
            }
            let _ = writeln!(out, "  f_{} = {}", o.h, o.f);
            let _ = writeln!(out, "  nu = {}, N = {}, pi-degree = {}", o.nu, o.n, o.pi_degree);
            if let Some(d) = &o.descartes {
                let signs: String = d.pattern.iter().map(|(_, s)| sign_char(*s)).collect();
                let _ = writeln!(out, "  descartes: signs [{signs}], variations {}, bound {}", d.variations, d.bound);
            }
            if let Some(r) = o.independence_rank {
                let _ = writeln!(out, "  independence rank = {r} of {}", o.fbar.len());
            }
        }
        if let Some(v) = &self.verify {
            let _ = writeln!(out, "verify");
            for w in v {
                let _ = match (&w.error, w.r_fixed) {
                    (Some(e), _) => writeln!(out, "  eps = {}: {e}", w.eps),
                    (None, Some(r)) => writeln!(
                        out,
                        "  eps = {}: r_fixed = {r:.12}, predicted = {}, residual = {:.3e}",
                        w.eps,
                        w.rbar_predicted.map_or("none".into(), |p| format!("{p:.12}")),
                        w.residual.unwrap_or(0.0)
                    ),
                    (None, None) => Ok(()),
                };
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        out
    }

    fn render_latex(&self) -> String {
        let mut out = String::from("\\begin{align*}\n");
        for st in &self.substitutions {
            for a in &st.assignments {
                let _ = writeln!(out, "&\\text{{stage {}}}: & {} \\\\", st.stage, a.latex);
            }
        }
        for o in &self.orders {
            let _ = writeln!(out, "F_{{{}}} &= {} \\\\", o.h, o.latex.big_f);
            if let Some(y) = &o.latex.y {
                let _ = writeln!(out, "y_{{{}}} &= {} \\\\", o.h, y);
            }
            let _ = writeln!(out, "f_{{{}}}(r) &= {} \\\\", o.h, o.latex.f);
        }
        out.push_str("\\end{align*}\n");
        if let Some(e) = &self.error {
            let _ = writeln!(out, "% error ({}): {}", e.kind, e.message);
        }
        out
    }
}
