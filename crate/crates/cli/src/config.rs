//! TOML job description.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use averaging_core::analysis::SignMode;
use averaging_core::averaging::{Stage, StageRule};
use averaging_core::normalform::{Perturbation, SystemSpec};
use averaging_core::symcore::{parse_param_expr, parse_poly, Param, ParamPoly, Rational, XYPoly};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub system: SystemSection,
    #[serde(default)]
    pub perturbation: Vec<PerturbationSection>,
    #[serde(default)]
    pub substitution: Vec<SubstitutionSection>,
    #[serde(default)]
    pub analysis: AnalysisSection,
    pub verify: Option<VerifySection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub unperturbed_dx: String,
    pub unperturbed_dy: String,
    pub order: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSection {
    pub eps_order: usize,
    #[serde(default = "zero_text")]
    pub dx: String,
    #[serde(default = "zero_text")]
    pub dy: String,
}

fn zero_text() -> String {
    "0".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    fn items(&self) -> Vec<&str> {
        match self {
            OneOrMany::One(s) => vec![s.as_str()],
            OneOrMany::Many(v) => v.iter().map(String::as_str).collect(),
        }
    }
}

/// Exactly one of `assign`, `solve`, `auto`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionSection {
    pub stage: usize,
    pub assign: Option<OneOrMany>,
    pub solve: Option<OneOrMany>,
    #[serde(default)]
    pub auto: bool,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SignModeName {
    #[default]
    Independent,
    Numeric,
    Exact,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default)]
    pub descartes: bool,
    #[serde(default)]
    pub sign_mode: SignModeName,
    /// Report the independence rank of each `f̄_h` over these parameters
    /// (`["*"]` means all parameters of `f_h`).
    #[serde(default)]
    pub independence_params: Vec<String>,
    #[serde(default)]
    pub show_y: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    /// Parameter values; parameters not listed are 0.
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
    pub eps: Vec<f64>,
    pub bracket: [f64; 2],
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: JobConfig = toml::from_str(text)?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    fn check(&self) -> Result<(), ConfigError> {
        let k = self.system.order;
        if k == 0 {
            return Err(ConfigError::Invalid("system.order must be at least 1".into()));
        }
        for p in &self.perturbation {
            if p.eps_order == 0 {
                return Err(ConfigError::Invalid("perturbation.eps_order must be at least 1".into()));
            }
        }
        for s in &self.substitution {
            if s.stage == 0 {
                return Err(ConfigError::Invalid("substitution.stage must be at least 1".into()));
            }
            let n = s.assign.is_some() as u8 + s.solve.is_some() as u8 + s.auto as u8;
            if n != 1 {
                return Err(ConfigError::Invalid(format!("substitution at stage {} needs exactly one of assign, solve, auto", s.stage)));
            }
        }
        if let Some(v) = &self.verify {
            if v.eps.is_empty() || v.eps.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
                return Err(ConfigError::Invalid("verify.eps must be a nonempty list of nonnegative numbers".into()));
            }
            if !(v.bracket[0] > 0.0 && v.bracket[0] < v.bracket[1]) {
                return Err(ConfigError::Invalid("verify.bracket must satisfy 0 < lo < hi".into()));
            }
        }
        Ok(())
    }

    /// The system truncated or padded to `order`. Perturbations sharing an
    /// `eps_order` are summed; those above `order` are dropped.
    pub fn system(&self, order: usize) -> Result<SystemSpec<Rational>, ConfigError> {
        let parse = |what: &str, s: &str| parse_poly(s).map_err(|e| ConfigError::Invalid(format!("{what}: {e}")));
        let p = parse("system.unperturbed_dx", &self.system.unperturbed_dx)?;
        let q = parse("system.unperturbed_dy", &self.system.unperturbed_dy)?;
        let mut perts: Vec<Perturbation<Rational>> =
            (0..order).map(|_| Perturbation { dx: XYPoly::zero(), dy: XYPoly::zero() }).collect();
        for pt in self.perturbation.iter().filter(|pt| pt.eps_order <= order) {
            let slot = &mut perts[pt.eps_order - 1];
            slot.dx = slot.dx.add(&parse("perturbation.dx", &pt.dx)?);
            slot.dy = slot.dy.add(&parse("perturbation.dy", &pt.dy)?);
        }
        SystemSpec::new(p, q, perts, order).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn stages(&self, order: usize) -> Result<Vec<Stage<Rational>>, ConfigError> {
        let mut out = Vec::new();
        for s in self.substitution.iter().filter(|s| s.stage <= order) {
            let rule = if let Some(a) = &s.assign {
                let mut list = Vec::new();
                for item in a.items() {
                    list.push(parse_assignment(item)?);
                }
                StageRule::Assign(list)
            } else if let Some(v) = &s.solve {
                let mut ps = Vec::new();
                for name in v.items() {
                    ps.push(param_name(name.trim())?);
                }
                StageRule::Solve(ps)
            } else {
                StageRule::Auto
            };
            out.push(Stage { stage: s.stage, rule });
        }
        Ok(out)
    }

    pub fn values(&self) -> Result<HashMap<Param, Rational>, ConfigError> {
        let mut out = HashMap::new();
        if let Some(v) = &self.verify {
            for (name, val) in &v.values {
                let q = match val {
                    Value::Int(n) => Rational::from_integer(*n),
                    Value::Text(t) => parse_param_expr(t)
                        .ok()
                        .and_then(|p| p.as_constant())
                        .ok_or_else(|| ConfigError::Invalid(format!("verify.values.{name}: {t:?} is not a rational number")))?,
                };
                out.insert(param_name(name)?, q);
            }
        }
        Ok(out)
    }

    pub fn sign_mode(&self) -> Result<SignMode, ConfigError> {
        Ok(match self.analysis.sign_mode {
            SignModeName::Independent => SignMode::Independent,
            SignModeName::Exact => SignMode::Exact,
            SignModeName::Numeric => SignMode::Numeric(self.values()?),
        })
    }
}

fn param_name(name: &str) -> Result<Param, ConfigError> {
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "x" | "y" | "r" | "pi");
    if ok {
        Ok(Param::intern(name))
    } else {
        Err(ConfigError::Invalid(format!("{name:?} is not a parameter name")))
    }
}

/// `"name = expr"`.
fn parse_assignment(text: &str) -> Result<(Param, ParamPoly<Rational>), ConfigError> {
    let (lhs, rhs) = text.split_once('=').ok_or_else(|| ConfigError::Invalid(format!("assignment {text:?} has no '='")))?;
    let p = param_name(lhs.trim())?;
    let e = parse_param_expr(rhs.trim()).map_err(|e| ConfigError::Invalid(format!("assignment {text:?}: {e}")))?;
    Ok((p, e))
}
