//! Special-means consequences of the bounds for the power model `f(x) = x^s/s`.
//!
//! With `0 < a < b <= 1` and `0 < s < 1` the trapezoid gap of the power model is
//! `(1/s)|A(a^s, b^s) - L_s(a,b)^s|`. Each bound is evaluated along two routes:
//! the stated mean form (`prop_rhs_*`) and the route through the `g` functions
//! (`*_via_bounds`). Agreement is classified rather than assumed.

use crate::bounds::{self, AlphaParams};
use crate::means::{mean_a, mean_l, mean_lp_pow};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Consistency {
    Consistent,
    Discrepant,
}

impl Consistency {
    pub fn as_str(self) -> &'static str {
        match self {
            Consistency::Consistent => "consistent",
            Consistency::Discrepant => "discrepant",
        }
    }
}

/// Outcome of evaluating one identity along two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck<T> {
    pub stated: T,
    pub reference: T,
    /// `|stated - reference|`.
    pub residual: T,
    /// `residual / max(|reference|, tiny)`.
    pub relative: T,
    pub status: Consistency,
}

impl<T: Real> IdentityCheck<T> {
    fn classify(stated: T, reference: T, tol: T) -> Self {
        let residual = (stated - reference).abs();
        let relative = residual / reference.abs().max(T::min_positive_value());
        let ok = stated.is_finite() && reference.is_finite() && (residual <= tol || relative <= tol);
        Self {
            stated,
            reference,
            residual,
            relative,
            status: if ok {
                Consistency::Consistent
            } else {
                Consistency::Discrepant
            },
        }
    }
}

fn check_range<T: Real>(a: T, b: T, s: T) -> Result<()> {
    if !(a > T::zero() && a < b && b <= T::one()) {
        return Err(Error::Precondition(format!(
            "propositions need 0 < a < b <= 1, got a = {a}, b = {b}"
        )));
    }
    if !(s > T::zero() && s < T::one()) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s.as_f64(),
            reason: "propositions need 0 < s < 1",
        });
    }
    Ok(())
}

fn check_q<T: Real>(q: T, strict: bool) -> Result<()> {
    let ok = if strict { q > T::one() } else { q >= T::one() };
    if ok && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "q",
            value: q.as_f64(),
            reason: if strict { "q must exceed 1" } else { "q must be at least 1" },
        })
    }
}

/// `|A(a^s, b^s) - L_s(a,b)^s|`. Coincident arguments give 0.
pub fn prop_lhs<T: Real>(a: T, b: T, s: T) -> Result<T> {
    if a == b && a > T::zero() && a <= T::one() {
        return Ok(T::zero());
    }
    check_range(a, b, s)?;
    let arith = mean_a(a.powf(s), b.powf(s))?;
    let lsp = mean_lp_pow(a, b, s)?;
    Ok((arith - lsp).abs())
}

/// Endpoint slopes of the power model: `(a^{s-1}, b^{s-1})`.
fn power_slopes<T: Real>(a: T, b: T, s: T) -> (T, T) {
    (a.powf(s - T::one()), b.powf(s - T::one()))
}

/// Stated right side of the first proposition:
/// `(b-a) s b^c / 2 · L(a^c, b^c) [A(a^c, b^c) - L(a^c, b^c)/2]`, `c = s(s-1)`.
pub fn prop_rhs_41<T: Real>(a: T, b: T, s: T) -> Result<T> {
    check_range(a, b, s)?;
    let c = s * (s - T::one());
    Ok((b - a) * s * b.powf(c) / T::two() * bb_mean_form(a, b, c)?)
}

fn bb_mean_form<T: Real>(a: T, b: T, c: T) -> Result<T> {
    let (ac, bc) = (a.powf(c), b.powf(c));
    let l = mean_l(ac, bc)?;
    Ok(l * (mean_a(ac, bc)? - l / T::two()))
}

/// The first proposition's bound routed through `G1`: `s (b-a)/2 · G1`.
pub fn prop_rhs_41_via_bounds<T: Real>(a: T, b: T, s: T) -> Result<T> {
    check_range(a, b, s)?;
    let (fa, fb) = power_slopes(a, b, s);
    Ok(s * (b - a) / T::two() * bounds::g1_composite(fa, fb, s)?)
}

/// Stated right side of the second proposition:
/// `(b-a) s b^{sq(1-s)} / (2 (p+1)^{1/p}) · L(a^{sq(s-1)}, b^{sq(s-1)})^{1/q}`.
pub fn prop_rhs_32<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    check_q(q, true)?;
    let p = bounds::conjugate_exponent(q)?;
    let c = s * q * (s - T::one());
    let l = mean_l(a.powf(c), b.powf(c))?;
    Ok(s * b.powf(s * q * (T::one() - s)) * bounds::holder_prefactor(a, b, p) * l.powf(q.recip()))
}

/// The second proposition's bound routed through `G2`.
pub fn prop_rhs_32_via_bounds<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    let p = bounds::conjugate_exponent(q)?;
    let (fa, fb) = power_slopes(a, b, s);
    Ok(s * bounds::holder_prefactor(a, b, p) * bounds::g2_composite(fa, fb, s, q)?)
}

/// Stated right side of the third proposition:
/// `s (b-a)/2 · (1/4)^{1-1/q} · b^{s(s-1)} [U^{1/q} + V^{1/q}]`.
///
/// A negative `V` with `q > 1` has no real root and yields a domain error.
pub fn prop_rhs_33<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    check_q(q, false)?;
    let u = compute_u(a, b, s, q)?;
    let v = compute_v(a, b, s, q)?;
    let inv_q = q.recip();
    let root = |x: T, name: &str| -> Result<T> {
        if x < T::zero() && q != T::one() {
            return Err(crate::DomainError::new(
                x.as_f64(),
                format!("{name} is negative; its 1/q-th power is not real"),
            )
            .into());
        }
        Ok(if q == T::one() { x } else { x.powf(inv_q) })
    };
    let c = s * (s - T::one());
    Ok(s * (b - a) / T::two()
        * bounds::power_mean_factor(q)
        * b.powf(c)
        * (root(u, "U")? + root(v, "V")?))
}

/// The third proposition's bound routed through `G3`.
pub fn prop_rhs_33_via_bounds<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    check_q(q, false)?;
    let (fa, fb) = power_slopes(a, b, s);
    Ok(s * (b - a) / T::two() * bounds::power_mean_factor(q) * bounds::g3_composite(fa, fb, s, q)?)
}

/// `α(sq, sq) = (a/b)^{sq(s-1)}` for the power model.
fn power_alpha<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    let (fa, fb) = power_slopes(a, b, s);
    bounds::alpha(&AlphaParams {
        fprime_a_abs: fa,
        fprime_b_abs: fb,
        u: s * q,
        v: s * q,
    })
}

/// `U` in mean form: `(L(a^{c/2}, b^{c/2}) / b^{c/2} - 1) / (ln a^c - ln b^c)`, `c = sq(s-1)`.
pub fn compute_u<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    check_q(q, false)?;
    let c = s * q * (s - T::one());
    let h = c / T::two();
    let log_diff = c * (a.ln() - b.ln());
    Ok((mean_l(a.powf(h), b.powf(h))? / b.powf(h) - T::one()) / log_diff)
}

/// `V` in ratio form:
/// `(a/b)^{2c} / (ln a^c - ln b^c) · [1 - ((a/b)^c + 1) / ((a/b)^c (ln a^{c/2} - ln b^{c/2}))]`.
pub fn compute_v<T: Real>(a: T, b: T, s: T, q: T) -> Result<T> {
    check_range(a, b, s)?;
    check_q(q, false)?;
    let c = s * q * (s - T::one());
    let r = (a / b).powf(c);
    let log_diff = c * (a.ln() - b.ln());
    let half_log_diff = log_diff / T::two();
    Ok((a / b).powf(T::two() * c) / log_diff * (T::one() - (r + T::one()) / (r * half_log_diff)))
}

/// `|hh_lhs(power model) - prop_lhs / s|` where the gap is taken by quadrature.
pub fn identity_aa_check<T: Real>(
    m: &crate::FunctionModel<T>,
    a: T,
    b: T,
    tol: T,
) -> Result<IdentityCheck<T>> {
    let s = m.power_exponent().ok_or_else(|| {
        Error::Precondition(format!("`{}` is not a power model", m.name()))
    })?;
    let via_quad = bounds::hh_lhs(m, a, b, 1e-13)?;
    let via_means = prop_lhs(a, b, s)? / s;
    Ok(IdentityCheck::classify(via_means, via_quad, tol))
}

/// `G1` of the power model against its stated mean form.
pub fn identity_bb_check<T: Real>(a: T, b: T, s: T, tol: T) -> Result<IdentityCheck<T>> {
    check_range(a, b, s)?;
    let (fa, fb) = power_slopes(a, b, s);
    let reference = bounds::g1_composite(fa, fb, s)?;
    let c = s * (s - T::one());
    let stated = b.powf(c) * bb_mean_form(a, b, c)?;
    Ok(IdentityCheck::classify(stated, reference, tol))
}

/// `g3(α(sq,sq))` against `L(a^c, b^c) / b^c`, `c = sq(s-1)`.
pub fn identity_cc_check<T: Real>(a: T, b: T, s: T, q: T, tol: T) -> Result<IdentityCheck<T>> {
    check_range(a, b, s)?;
    check_q(q, false)?;
    let reference = bounds::g3(power_alpha(a, b, s, q)?)?.value;
    let c = s * q * (s - T::one());
    let stated = mean_l(a.powf(c), b.powf(c))? / b.powf(c);
    Ok(IdentityCheck::classify(stated, reference, tol))
}

/// `U` against `g1(α(sq,sq))`.
pub fn identity_dd_check<T: Real>(a: T, b: T, s: T, q: T, tol: T) -> Result<IdentityCheck<T>> {
    let reference = bounds::g1(power_alpha(a, b, s, q)?)?.value;
    Ok(IdentityCheck::classify(compute_u(a, b, s, q)?, reference, tol))
}

/// `V` against `g2(α(sq,sq))`.
pub fn identity_ee_check<T: Real>(a: T, b: T, s: T, q: T, tol: T) -> Result<IdentityCheck<T>> {
    let reference = bounds::g2(power_alpha(a, b, s, q)?)?.value;
    Ok(IdentityCheck::classify(compute_v(a, b, s, q)?, reference, tol))
}
