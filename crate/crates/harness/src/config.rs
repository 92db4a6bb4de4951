use std::path::Path;

use hadamard_core::{FunctionModel, Interval, Model64};
use serde::{Deserialize, Serialize};

use crate::record::TheoremTag;
use crate::{HarnessError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Shipped configuration used by `verify` when no `--config` is given.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    Power { s: f64, domain: [f64; 2] },
    Exp { lambda: f64, domain: [f64; 2] },
    ExpRecip { lambda: f64, domain: [f64; 2] },
    Expr { f: String, domain: [f64; 2] },
}

impl ModelSpec {
    pub fn domain(&self) -> [f64; 2] {
        match self {
            ModelSpec::Power { domain, .. }
            | ModelSpec::Exp { domain, .. }
            | ModelSpec::ExpRecip { domain, .. }
            | ModelSpec::Expr { domain, .. } => *domain,
        }
    }

    pub fn build(&self) -> hadamard_core::Result<Model64> {
        let [lo, hi] = self.domain();
        let d = Interval::new(lo, hi)?;
        match self {
            ModelSpec::Power { s, .. } => FunctionModel::power(*s, d),
            ModelSpec::Exp { lambda, .. } => FunctionModel::exp(*lambda, d),
            ModelSpec::ExpRecip { lambda, .. } => FunctionModel::exp_recip(*lambda, d),
            ModelSpec::Expr { f, .. } => FunctionModel::from_expr(f, d),
        }
    }

    /// Builds a spec from CLI pieces: `--model power|exp|exp-recip --param v` or `--f expr`.
    pub fn from_cli(
        model: Option<&str>,
        param: Option<f64>,
        expr: Option<&str>,
        domain: Option<[f64; 2]>,
    ) -> Result<Self> {
        let need_param = |name: &str| {
            param.ok_or_else(|| HarnessError::config("--param", format!("model `{name}` needs --param")))
        };
        match (model, expr) {
            (Some(_), Some(_)) => Err(HarnessError::config("--f", "give either --model or --f, not both")),
            (None, Some(f)) => Ok(ModelSpec::Expr {
                f: f.to_string(),
                domain: domain.ok_or_else(|| HarnessError::config("--domain", "--f needs --domain lo,hi"))?,
            }),
            (Some("power"), None) => Ok(ModelSpec::Power {
                s: need_param("power")?,
                domain: domain.unwrap_or([0.01, 1.0]),
            }),
            (Some("exp"), None) => Ok(ModelSpec::Exp {
                lambda: need_param("exp")?,
                domain: domain.unwrap_or([0.5, 4.0]),
            }),
            (Some("exp-recip"), None) => Ok(ModelSpec::ExpRecip {
                lambda: need_param("exp-recip")?,
                domain: domain.unwrap_or([1.0, 4.0]),
            }),
            (Some(other), None) => Err(HarnessError::config(
                "--model",
                format!("unknown model `{other}` (expected power, exp or exp-recip)"),
            )),
            (None, None) => Err(HarnessError::config("--model", "no model given (use --model or --f)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance of the trapezoid-gap quadrature.
    pub quad_tol: f64,
    /// Slack of the grid class checks.
    pub slack: f64,
    /// Threshold for classifying two-route identities as consistent.
    pub identity_tol: f64,
    /// `lhs <= rhs + violation_slack` counts as a pass.
    #[serde(default = "default_violation_slack")]
    pub violation_slack: f64,
}

fn default_violation_slack() -> f64 {
    1e-12
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad_tol: 1e-12,
            slack: 1e-9,
            identity_tol: 1e-8,
            violation_slack: default_violation_slack(),
        }
    }
}

fn default_grid_points() -> usize {
    33
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema: u32,
    pub models: Vec<ModelSpec>,
    pub a_grid: Vec<f64>,
    pub b_grid: Vec<f64>,
    pub s_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    /// Theorems evaluated on the configured models; all of them when absent.
    #[serde(default)]
    pub theorems: Option<Vec<TheoremTag>>,
    /// Also run the special-means propositions on power models built from `s_grid`.
    #[serde(default = "default_true")]
    pub propositions: bool,
    /// Extra seeded-random `(a, b)` pairs per model.
    #[serde(default)]
    pub random_pairs: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default)]
    pub seed: u64,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn shipped() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("shipped config is valid")
    }

    pub fn theorem_enabled(&self, tag: TheoremTag) -> bool {
        self.theorems.as_ref().is_none_or(|t| t.contains(&tag))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(HarnessError::config(
                "schema",
                format!("unsupported schema {} (expected {SCHEMA_VERSION})", self.schema),
            ));
        }
        if self.models.is_empty() && !self.propositions {
            return Err(HarnessError::config("models", "no models and propositions disabled"));
        }
        for (i, m) in self.models.iter().enumerate() {
            let [lo, hi] = m.domain();
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(HarnessError::config(
                    format!("models[{i}].domain"),
                    "domain must be finite with lo < hi",
                ));
            }
        }
        for (name, grid) in [
            ("a_grid", &self.a_grid),
            ("b_grid", &self.b_grid),
            ("s_grid", &self.s_grid),
            ("q_grid", &self.q_grid),
        ] {
            if grid.is_empty() {
                return Err(HarnessError::config(name, "grid must not be empty"));
            }
            if let Some(i) = grid.iter().position(|v| !v.is_finite()) {
                return Err(HarnessError::config(format!("{name}[{i}]"), "value must be finite"));
            }
        }
        if let Some(i) = self.s_grid.iter().position(|&s| !(s > 0.0 && s <= 1.0)) {
            return Err(HarnessError::config(format!("s_grid[{i}]"), "s must lie in (0, 1]"));
        }
        if let Some(i) = self.q_grid.iter().position(|&q| q < 1.0) {
            return Err(HarnessError::config(format!("q_grid[{i}]"), "q must be at least 1"));
        }
        if !self.a_grid.iter().any(|&a| self.b_grid.iter().any(|&b| a < b)) {
            return Err(HarnessError::config("b_grid", "no pair with a < b"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tolerances.quad_tol", t.quad_tol),
            ("tolerances.slack", t.slack),
            ("tolerances.identity_tol", t.identity_tol),
            ("tolerances.violation_slack", t.violation_slack),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(HarnessError::config(name, "tolerance must be positive"));
            }
        }
        if self.grid_points < 3 {
            return Err(HarnessError::config("grid_points", "need at least 3"));
        }
        Ok(())
    }
}
