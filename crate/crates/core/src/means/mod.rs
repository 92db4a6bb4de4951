//! Arithmetic, logarithmic and generalized logarithmic means.
//!
//! `L` and `L_p` are evaluated through `ℓ = ln(b/a)` and `expm1`, which keeps
//! them accurate for nearby arguments and for the large negative exponents that
//! appear in the propositions.

pub mod propositions;

use crate::{Error, Real, Result};

/// Relative gap below which `L` and `L_p` return their limit value `a`.
pub const COINCIDENT_REL: f64 = 1e-12;
/// Distance from `p ∈ {-1, 0}` treated as singular.
pub const EXPONENT_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanKind<T> {
    Arithmetic,
    Logarithmic,
    GeneralizedLog { p: T },
}

/// A mean together with the arguments it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValue<T> {
    pub value: T,
    pub kind: MeanKind<T>,
    pub a: T,
    pub b: T,
}

impl<T: Real> MeanValue<T> {
    pub fn compute(kind: MeanKind<T>, a: T, b: T) -> Result<Self> {
        let value = match kind {
            MeanKind::Arithmetic => mean_a(a, b)?,
            MeanKind::Logarithmic => mean_l(a, b)?,
            MeanKind::GeneralizedLog { p } => mean_lp(a, b, p)?,
        };
        Ok(Self { value, kind, a, b })
    }
}

fn check_positive<T: Real>(a: T, b: T) -> Result<()> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v.as_f64(),
                reason: "means are defined for positive finite arguments",
            });
        }
    }
    Ok(())
}

fn coincident<T: Real>(a: T, b: T) -> bool {
    (b - a).abs() <= T::lit(COINCIDENT_REL) * a
}

/// `A(a, b) = (a + b)/2`.
pub fn mean_a<T: Real>(a: T, b: T) -> Result<T> {
    check_positive(a, b)?;
    Ok((a + b) / T::two())
}

/// `L(a, b) = (b - a)/(ln b - ln a)`, with `L(a, a) = a`.
pub fn mean_l<T: Real>(a: T, b: T) -> Result<T> {
    check_positive(a, b)?;
    if coincident(a, b) {
        return Ok(a);
    }
    let l = (b / a).ln();
    Ok(a * l.exp_m1() / l)
}

/// `L_p(a, b)^p = (b^{p+1} - a^{p+1}) / ((p+1)(b-a))`, without the final root.
pub fn mean_lp_pow<T: Real>(a: T, b: T, p: T) -> Result<T> {
    check_positive(a, b)?;
    check_exponent(p)?;
    if coincident(a, b) {
        return Ok(a.powf(p));
    }
    let l = (b / a).ln();
    let p1 = p + T::one();
    Ok(a.powf(p) * (p1 * l).exp_m1() / (p1 * l.exp_m1()))
}

/// Generalized logarithmic mean `L_p(a, b)` for `p ∉ {-1, 0}`.
pub fn mean_lp<T: Real>(a: T, b: T, p: T) -> Result<T> {
    check_positive(a, b)?;
    check_exponent(p)?;
    if coincident(a, b) {
        return Ok(a);
    }
    let l = (b / a).ln();
    let p1 = p + T::one();
    let ratio = (p1 * l).exp_m1() / (p1 * l.exp_m1());
    Ok(a * ratio.powf(p.recip()))
}

fn check_exponent<T: Real>(p: T) -> Result<()> {
    let guard = T::lit(EXPONENT_GUARD);
    if !p.is_finite() || p.abs() < guard || (p + T::one()).abs() < guard {
        return Err(Error::UnsupportedExponent(p.as_f64()));
    }
    Ok(())
}
