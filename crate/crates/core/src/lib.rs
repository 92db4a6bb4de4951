//! Numerical toolkit for Hermite–Hadamard type bounds on the trapezoid gap
//!
//! ```text
//!   | (f(a) + f(b))/2 - 1/(b-a) ∫_a^b f(x) dx |
//! ```
//!
//! for functions whose derivative magnitude is s-geometrically convex.
//!
//! The crate is organized bottom-up:
//!
//! * [`expr`] parses one-variable expressions and differentiates them symbolically.
//! * [`model`] holds the function objects (`f`, `f'`, domain) every bound is evaluated on.
//! * [`quadrature`] is the adaptive Gauss–Kronrod integrator used as an independent oracle.
//! * [`convexity`] contains grid-based class predicates and hypothesis bundles.
//! * [`bounds`] evaluates the auxiliary `g` functions, the composite bounds and the classical baselines.
//! * [`means`] contains the arithmetic/logarithmic means and the special-means propositions.
//!
//! Everything numeric is generic over [`Real`]; `f64` aliases live at the crate root.

pub mod bounds;
pub mod convexity;
mod error;
pub mod expr;
pub mod means;
pub mod model;
pub mod quadrature;
mod scalar;

pub use error::{DomainError, Error, Result};
pub use scalar::Real;

pub use bounds::{AlphaParams, Branch, BoundValue};
pub use convexity::{ClassCheck, ClassCheckConfig, HypothesisReport, Witness};
pub use expr::{Expr, ParseError};
pub use means::{MeanKind, MeanValue};
pub use model::{FunctionModel, Interval};
pub use quadrature::{QuadConfig, QuadError, QuadResult};

/// Double-precision expression tree.
pub type Expr64 = Expr<f64>;
/// Double-precision function model.
pub type Model64 = FunctionModel<f64>;
/// Double-precision closed interval.
pub type Interval64 = Interval<f64>;
/// Double-precision quadrature result.
pub type QuadResult64 = QuadResult<f64>;
/// Double-precision hypothesis report.
pub type HypothesisReport64 = HypothesisReport<f64>;
/// Double-precision bound value.
pub type BoundValue64 = BoundValue<f64>;

/// Single-precision aliases, useful for smoke-testing precision sensitivity.
pub type Expr32 = Expr<f32>;
pub type Model32 = FunctionModel<f32>;
