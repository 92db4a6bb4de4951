use thiserror::Error;

use crate::expr::ParseError;
use crate::quadrature::QuadError;

/// Evaluation outside the mathematical domain of an expression or model.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error at x = {x}: {reason}")]
pub struct DomainError {
    pub x: f64,
    pub reason: String,
}

impl DomainError {
    pub fn new(x: f64, reason: impl Into<String>) -> Self {
        Self {
            x,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Domain(#[from] DomainError),

    #[error(transparent)]
    Quadrature(#[from] QuadError),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} = {value} is outside the supported range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("function takes negative value {value} at x = {x}")]
    NegativeValue { x: f64, value: f64 },

    #[error("function takes non-positive value {value} at x = {x}")]
    NonPositiveValue { x: f64, value: f64 },

    #[error("generalized logarithmic mean undefined for exponent p = {0}")]
    UnsupportedExponent(f64),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
