//! Trapezoid-gap bounds built from the derivative ratio `α`.
//!
//! With `u = ln α` the three auxiliary functions are
//!
//! ```text
//! g1(α) = ∫_0^{1/2} (1-2t) α^t dt = (2√α - 2 - u) / u²
//! g2(α) = ∫_{1/2}^1 (2t-1) α^t dt = (2√α - 2α + α u) / u²
//! g3(α) = ∫_0^1 α^t dt            = (α - 1) / u
//! ```
//!
//! each with a removable singularity at `α = 1` (`g1 = g2 = 1/4`, `g3 = 1`).

use crate::model::FunctionModel;
use crate::quadrature::{integrate_kinked, integrate_with, QuadConfig};
use crate::{Error, Real, Result};

/// Below this `|ln α|` the truncated series replaces the closed form.
pub const SERIES_SWITCH: f64 = 1e-3;
/// Supported window for `α`.
pub const ALPHA_MIN: f64 = 1e-12;
pub const ALPHA_MAX: f64 = 1e12;

// Taylor coefficients in u = ln α, through u³.
const G1_SERIES: [f64; 4] = [1.0 / 4.0, 1.0 / 24.0, 1.0 / 192.0, 1.0 / 1920.0];
const G2_SERIES: [f64; 4] = [1.0 / 4.0, 5.0 / 24.0, 17.0 / 192.0, 49.0 / 1920.0];
const G3_SERIES: [f64; 4] = [1.0, 1.0 / 2.0, 1.0 / 6.0, 1.0 / 24.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Series,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue<T> {
    pub value: T,
    pub branch: Branch,
    pub alpha_used: T,
}

/// Inputs of `α(u, v) = |f'(a)|^u |f'(b)|^{-v}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParams<T> {
    pub fprime_a_abs: T,
    pub fprime_b_abs: T,
    pub u: T,
    pub v: T,
}

fn check_alpha_window<T: Real>(alpha: T) -> Result<()> {
    if alpha >= T::lit(ALPHA_MIN) && alpha <= T::lit(ALPHA_MAX) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "alpha",
            value: alpha.as_f64(),
            lo: ALPHA_MIN,
            hi: ALPHA_MAX,
        })
    }
}

/// Derivative ratio, computed in the log domain.
pub fn alpha<T: Real>(p: &AlphaParams<T>) -> Result<T> {
    for (name, v) in [
        ("fprime_a_abs", p.fprime_a_abs),
        ("fprime_b_abs", p.fprime_b_abs),
        ("u", p.u),
        ("v", p.v),
    ] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v.as_f64(),
                reason: "must be finite and strictly positive",
            });
        }
    }
    let log_alpha = p.u * p.fprime_a_abs.ln() - p.v * p.fprime_b_abs.ln();
    let value = log_alpha.exp();
    check_alpha_window(value)?;
    Ok(value)
}

fn horner<T: Real>(coeffs: &[f64; 4], u: T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * u + T::lit(c))
}

fn evaluate<T: Real>(alpha: T, series: &[f64; 4], closed: impl Fn(T, T) -> T) -> Result<BoundValue<T>> {
    check_alpha_window(alpha)?;
    let u = alpha.ln();
    let (value, branch) = if u.abs() < T::lit(SERIES_SWITCH) {
        (horner(series, u), Branch::Series)
    } else {
        (closed(alpha, u), Branch::ClosedForm)
    };
    Ok(BoundValue {
        value,
        branch,
        alpha_used: alpha,
    })
}

// The closed forms are written with expm1 so the leading cancellation is exact:
// 2√α - 2 - u = 2 expm1(u/2) - u and 2√α - 2α + αu = α (2 expm1(-u/2) + u).

pub fn g1<T: Real>(alpha: T) -> Result<BoundValue<T>> {
    evaluate(alpha, &G1_SERIES, |_, u| {
        (T::two() * (T::half() * u).exp_m1() - u) / (u * u)
    })
}

pub fn g2<T: Real>(alpha: T) -> Result<BoundValue<T>> {
    evaluate(alpha, &G2_SERIES, |a, u| {
        a * (T::two() * (-T::half() * u).exp_m1() + u) / (u * u)
    })
}

pub fn g3<T: Real>(alpha: T) -> Result<BoundValue<T>> {
    evaluate(alpha, &G3_SERIES, |_, u| u.exp_m1() / u)
}

/// Textbook closed forms without cancellation control, for comparison only.
pub mod naive {
    use crate::Real;

    pub fn g1<T: Real>(alpha: T) -> T {
        let u = alpha.ln();
        (T::two() * alpha.sqrt() - T::two() - u) / (u * u)
    }

    pub fn g2<T: Real>(alpha: T) -> T {
        let u = alpha.ln();
        (T::two() * alpha.sqrt() - T::two() * alpha + alpha * u) / (u * u)
    }

    pub fn g3<T: Real>(alpha: T) -> T {
        (alpha - T::one()) / alpha.ln()
    }
}

/// `|f'(a)|`, `|f'(b)|` after checking `[a, b]` lies in the model domain.
fn endpoint_slopes<T: Real>(m: &FunctionModel<T>, a: T, b: T) -> Result<(T, T)> {
    m.check_subinterval(a, b)?;
    Ok((m.abs_fprime(a)?, m.abs_fprime(b)?))
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if s > T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "s",
            value: s.as_f64(),
            reason: "s must lie in (0, 1]",
        })
    }
}

/// Hölder conjugate `p = q / (q - 1)` of `q > 1`.
pub fn conjugate_exponent<T: Real>(q: T) -> Result<T> {
    if !(q > T::one()) || !q.is_finite() {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q.as_f64(),
            reason: "q must exceed 1 so that 1/p + 1/q = 1 has a finite solution",
        });
    }
    Ok(q / (q - T::one()))
}

/// `|f'(b)|^s [g1(α(s,s)) + g2(α(s,s))]`, from endpoint slopes.
pub fn g1_composite<T: Real>(fa: T, fb: T, s: T) -> Result<T> {
    check_s(s)?;
    let al = alpha(&AlphaParams {
        fprime_a_abs: fa,
        fprime_b_abs: fb,
        u: s,
        v: s,
    })?;
    Ok(fb.powf(s) * (g1(al)?.value + g2(al)?.value))
}

/// `|f'(b)|^s [g3(α(sq,sq))]^{1/q}`, from endpoint slopes.
pub fn g2_composite<T: Real>(fa: T, fb: T, s: T, q: T) -> Result<T> {
    check_s(s)?;
    conjugate_exponent(q)?;
    let sq = s * q;
    let al = alpha(&AlphaParams {
        fprime_a_abs: fa,
        fprime_b_abs: fb,
        u: sq,
        v: sq,
    })?;
    Ok(fb.powf(s) * g3(al)?.value.powf(q.recip()))
}

/// `|f'(b)|^s ([g1(α(sq,sq))]^{1/q} + [g2(α(sq,sq))]^{1/q})`, from endpoint slopes.
pub fn g3_composite<T: Real>(fa: T, fb: T, s: T, q: T) -> Result<T> {
    check_s(s)?;
    if !(q >= T::one()) || !q.is_finite() {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q.as_f64(),
            reason: "q must be at least 1",
        });
    }
    let sq = s * q;
    let al = alpha(&AlphaParams {
        fprime_a_abs: fa,
        fprime_b_abs: fb,
        u: sq,
        v: sq,
    })?;
    let inv_q = q.recip();
    Ok(fb.powf(s) * (g1(al)?.value.powf(inv_q) + g2(al)?.value.powf(inv_q)))
}

/// Composite `G1` for a model on `[a, b]`. The `|f'(a)| <= 1` side condition is not enforced.
#[allow(non_snake_case)]
pub fn G1<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T) -> Result<T> {
    let (fa, fb) = endpoint_slopes(m, a, b)?;
    g1_composite(fa, fb, s)
}

#[allow(non_snake_case)]
pub fn G2<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T, q: T) -> Result<T> {
    let (fa, fb) = endpoint_slopes(m, a, b)?;
    g2_composite(fa, fb, s, q)
}

#[allow(non_snake_case)]
pub fn G3<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T, q: T) -> Result<T> {
    let (fa, fb) = endpoint_slopes(m, a, b)?;
    g3_composite(fa, fb, s, q)
}

/// Full right-hand side `(b-a)/2 · G1`.
pub fn rhs_eq10<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T) -> Result<T> {
    Ok((b - a) / T::two() * G1(m, a, b, s)?)
}

/// Full right-hand side `(b-a) / (2 (p+1)^{1/p}) · G2` with `1/p + 1/q = 1`.
pub fn rhs_eq11<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T, q: T) -> Result<T> {
    let p = conjugate_exponent(q)?;
    Ok(holder_prefactor(a, b, p) * G2(m, a, b, s, q)?)
}

/// Full right-hand side `(b-a)/2 · (1/4)^{1-1/q} · G3`.
pub fn rhs_eq111<T: Real>(m: &FunctionModel<T>, a: T, b: T, s: T, q: T) -> Result<T> {
    Ok((b - a) / T::two() * power_mean_factor(q) * G3(m, a, b, s, q)?)
}

/// `(b-a) / (2 (p+1)^{1/p})`.
pub fn holder_prefactor<T: Real>(a: T, b: T, p: T) -> T {
    (b - a) / (T::two() * (p + T::one()).powf(p.recip()))
}

/// `(1/4)^{1-1/q}`.
pub fn power_mean_factor<T: Real>(q: T) -> T {
    T::lit(0.25).powf(T::one() - q.recip())
}

/// Classical bound for convex `|f'|`: `(b-a)(|f'(a)| + |f'(b)|)/8`.
pub fn classical_bound_8<T: Real>(m: &FunctionModel<T>, a: T, b: T) -> Result<T> {
    let (fa, fb) = endpoint_slopes(m, a, b)?;
    Ok((b - a) * (fa + fb) / T::lit(8.0))
}

/// Classical bound for convex `|f'|^{p/(p-1)}`.
pub fn classical_bound_9<T: Real>(m: &FunctionModel<T>, a: T, b: T, p: T) -> Result<T> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p.as_f64(),
            reason: "p must exceed 1",
        });
    }
    let (fa, fb) = endpoint_slopes(m, a, b)?;
    let r = p / (p - T::one());
    let avg = (fa.powf(r) + fb.powf(r)) / T::two();
    Ok(holder_prefactor(a, b, p) * avg.powf(r.recip()))
}

fn quad_cfg(tol: f64) -> QuadConfig {
    QuadConfig {
        abs_tol: tol * 1e-3,
        rel_tol: tol,
        ..QuadConfig::default()
    }
}

/// Signed gap `(f(a) + f(b))/2 - 1/(b-a) ∫_a^b f`.
pub fn hh_gap<T: Real>(m: &FunctionModel<T>, a: T, b: T, tol: f64) -> Result<T> {
    m.check_subinterval(a, b)?;
    let ends = (m.value(a)? + m.value(b)?) / T::two();
    let r = integrate_with(
        |x| m.value(x).unwrap_or_else(|_| T::nan()),
        a,
        b,
        &quad_cfg(tol),
    )?;
    Ok(ends - r.value / (b - a))
}

/// Trapezoid gap `|(f(a) + f(b))/2 - 1/(b-a) ∫_a^b f|`.
pub fn hh_lhs<T: Real>(m: &FunctionModel<T>, a: T, b: T, tol: f64) -> Result<T> {
    hh_gap(m, a, b, tol).map(|v| v.abs())
}

/// Signed `(b-a)/2 ∫_0^1 (1-2t) f'(ta + (1-t)b) dt`, split at `t = 1/2`.
pub fn lemma1_rhs<T: Real>(m: &FunctionModel<T>, a: T, b: T, tol: f64) -> Result<T> {
    m.check_subinterval(a, b)?;
    let cfg = quad_cfg(tol);
    let h = T::half();
    let at = |t: T| {
        let x = (t * a + (T::one() - t) * b).max(a).min(b);
        m.fprime(x).unwrap_or_else(|_| T::nan())
    };
    let left = integrate_with(|t| (T::one() - T::two() * t) * at(t), T::zero(), h, &cfg)?;
    let right = integrate_with(|t| (T::one() - T::two() * t) * at(t), h, T::one(), &cfg)?;
    Ok((b - a) / T::two() * (left.value + right.value))
}

/// Quadrature values of the three integral representations, for cross-checks.
pub fn g_oracle<T: Real>(alpha: T, cfg: &QuadConfig) -> Result<(T, T, T)> {
    let pow = |t: T| (t * alpha.ln()).exp();
    let h = T::half();
    let o1 = integrate_with(|t| (T::one() - T::two() * t) * pow(t), T::zero(), h, cfg)?;
    let o2 = integrate_with(|t| (T::two() * t - T::one()) * pow(t), h, T::one(), cfg)?;
    let o3 = integrate_with(pow, T::zero(), T::one(), cfg)?;
    Ok((o1.value, o2.value, o3.value))
}

/// `∫_0^1 |1-2t| α^t dt` by quadrature.
pub fn g12_oracle<T: Real>(alpha: T, cfg: &QuadConfig) -> Result<T> {
    let l = alpha.ln();
    Ok(integrate_kinked(|t: T| (t * l).exp(), cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Interval;
    use std::f64::consts::E;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn removable_singularity_values() {
        assert_eq!(g1(1.0f64).unwrap().value, 0.25);
        assert_eq!(g2(1.0f64).unwrap().value, 0.25);
        assert_eq!(g3(1.0f64).unwrap().value, 1.0);
        assert_eq!(g1(1.0f64).unwrap().branch, Branch::Series);
    }

    #[test]
    fn closed_forms_at_e() {
        let r1 = g1(E).unwrap();
        assert_eq!(r1.branch, Branch::ClosedForm);
        assert!((r1.value - 0.297_442_541_400_256_3).abs() < 1e-15);
        assert!((g2(E).unwrap().value - 0.579_160_712_941_211_1).abs() < 1e-15);
        assert!((g3(E).unwrap().value - 1.718_281_828_459_045).abs() < 1e-15);
    }

    #[test]
    fn alpha_window() {
        assert!(matches!(g1(1e-13f64), Err(Error::OutOfRange { .. })));
        assert!(matches!(g3(2e12f64), Err(Error::OutOfRange { .. })));
        let p = AlphaParams {
            fprime_a_abs: 1e10,
            fprime_b_abs: 1e-10,
            u: 1.0,
            v: 1.0,
        };
        assert!(matches!(alpha(&p), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn alpha_examples() {
        let p = AlphaParams {
            fprime_a_abs: 0.7f64,
            fprime_b_abs: 0.7,
            u: 1.3,
            v: 1.3,
        };
        assert!((alpha(&p).unwrap() - 1.0).abs() < 1e-15);
        // power model s = 0.5 on [0.25, 0.75]: α(s,s) = 3^{1/4}
        let s = 0.5f64;
        let p = AlphaParams {
            fprime_a_abs: 0.25f64.powf(s - 1.0),
            fprime_b_abs: 0.75f64.powf(s - 1.0),
            u: s,
            v: s,
        };
        assert!((alpha(&p).unwrap() - 1.316_074_012_952_492_5).abs() < 1e-14);
        // u = 2v with |f'(a)| = 1 reduces to |f'(b)|^{-v}
        let p = AlphaParams {
            fprime_a_abs: 1.0,
            fprime_b_abs: 0.4,
            u: 3.0,
            v: 1.5,
        };
        assert!((alpha(&p).unwrap() - 0.4f64.powf(-1.5)).abs() < 1e-14);
        let bad = AlphaParams { u: 0.0, ..p };
        assert!(alpha(&bad).is_err());
    }

    #[test]
    fn composite_examples() {
        let ones = FunctionModel::from_fns("x+1", iv(0.5, 2.0), |x| x + 1.0, |_| 1.0).unwrap();
        for s in [0.3, 0.5, 1.0] {
            assert!((G1(&ones, 0.5, 2.0, s).unwrap() - 0.5).abs() < 1e-15);
            assert!((G2(&ones, 0.5, 2.0, s, 2.0).unwrap() - 1.0).abs() < 1e-15);
            for q in [1.0, 2.0, 4.0] {
                let expected = 2.0 * 0.25f64.powf(1.0 / q);
                assert!((G3(&ones, 0.5, 2.0, s, q).unwrap() - expected).abs() < 1e-15);
            }
        }

        let exp = FunctionModel::exp(1.0, iv(1.0, 2.0)).unwrap();
        // oracle value from 30-digit quadrature
        assert!((G1(&exp, 1.0, 2.0, 1.0).unwrap() - 0.118_635_349_712_438_92).abs() < 1e-14);

        let power = FunctionModel::power(0.5, iv(0.01, 1.0)).unwrap();
        assert!((G2(&power, 0.25, 0.75, 0.5, 2.0).unwrap() - 1.240_503_710_767_325_4).abs() < 1e-13);
        assert!(G2(&power, 0.25, 0.75, 0.5, 1.0).is_err());
        assert!(G3(&power, 0.25, 0.75, 0.5, 0.5).is_err());

        // q = 1 collapses G3 onto G1
        let g3q1 = G3(&power, 0.25, 0.75, 0.5, 1.0).unwrap();
        let g1v = G1(&power, 0.25, 0.75, 0.5).unwrap();
        assert!((g3q1 - g1v).abs() < 1e-15);
    }

    #[test]
    fn g3_composite_matches_split_quadrature() {
        // s = 1, q = 2, exp model on [1, 2]: α(2,2) = e²
        let exp = FunctionModel::exp(1.0, iv(1.0, 2.0)).unwrap();
        let got = G3(&exp, 1.0, 2.0, 1.0, 2.0).unwrap();
        let cfg = QuadConfig::relative(1e-13);
        let (o1, o2, _) = g_oracle(E * E, &cfg).unwrap();
        let expected = (-2.0f64).exp() * (o1.sqrt() + o2.sqrt());
        assert!((got - expected).abs() < 1e-13);
    }

    #[test]
    fn classical_baselines() {
        let sq = FunctionModel::from_fns("x^2", iv(0.0, 1.0), |x| x * x, |x| 2.0 * x).unwrap();
        assert!((classical_bound_8(&sq, 0.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        let b9 = classical_bound_9(&sq, 0.0, 1.0, 2.0).unwrap();
        assert!((b9 - 2f64.sqrt() / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!(classical_bound_9(&sq, 0.0, 1.0, 1.0).is_err());
        let lin = FunctionModel::from_fns("3x", iv(0.0, 1.0), |x| 3.0 * x, |_| 3.0).unwrap();
        assert!((classical_bound_8(&lin, 0.0, 1.0).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn gap_and_lemma_examples() {
        let sq = FunctionModel::from_fns("x^2", iv(0.0, 1.0), |x| x * x, |x| 2.0 * x).unwrap();
        assert!((hh_lhs(&sq, 0.0, 1.0, 1e-12).unwrap() - 1.0 / 6.0).abs() < 1e-13);
        assert!((lemma1_rhs(&sq, 0.0, 1.0, 1e-12).unwrap() - 1.0 / 6.0).abs() < 1e-13);
        let cube = FunctionModel::from_fns("x^3", iv(0.0, 1.0), |x| x * x * x, |x| 3.0 * x * x).unwrap();
        assert!((hh_gap(&cube, 0.0, 1.0, 1e-12).unwrap() - 0.25).abs() < 1e-13);
        assert!((lemma1_rhs(&cube, 0.0, 1.0, 1e-12).unwrap() - 0.25).abs() < 1e-13);
        let lin = FunctionModel::from_fns("2x+1", iv(0.0, 3.0), |x| 2.0 * x + 1.0, |_| 2.0).unwrap();
        assert!(hh_lhs(&lin, 0.5, 2.5, 1e-12).unwrap() < 1e-14);
        assert!(lemma1_rhs(&lin, 0.5, 2.5, 1e-12).unwrap().abs() < 1e-14);

        let power = FunctionModel::power(0.5, iv(0.01, 1.0)).unwrap();
        let lhs = hh_lhs(&power, 0.25, 0.75, 1e-12).unwrap();
        assert!((lhs - 0.032_692_070_451_105_31).abs() < 1e-13);
    }
}
