//! Verification harness: declarative sweeps over models and parameters,
//! hypothesis-gated verdicts, tightness search, and CSV/JSON reports.

pub mod config;
pub mod evaluate;
pub mod record;
pub mod report;
pub mod sweep;
pub mod tightness;

pub use config::{ModelSpec, SweepConfig, Tolerances};
pub use record::{BoundRecord, TheoremTag, Verdict};
pub use sweep::run_sweep;
pub use tightness::{optimize_tightness, ParamBox, TightnessResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("failed to parse config: {0}")]
    ConfigSyntax(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Model(#[from] hadamard_core::Error),

    #[error("no point in the search box satisfies the hypotheses of {0}")]
    EmptyFeasibleSet(TheoremTag),

    #[error("nothing to report: record list is empty")]
    EmptyReport,
}

impl HarnessError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
