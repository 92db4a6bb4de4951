//! Grid-based membership tests for the convexity classes.
//!
//! Every predicate is a semi-decision: `holds == true` means no violation was
//! found on the `(x, y, t)` grid within `slack`. Failures carry exact witnesses.
//! Both `x` and `y` range over the same grid, so the diagonal `x = y` is always
//! visited, and an odd `grid_points` places `t = 1/2` on the `t` grid.

use crate::model::{FunctionModel, Interval};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassCheckConfig<T> {
    /// Points per axis; at least 3.
    pub grid_points: usize,
    pub slack: T,
    pub s: T,
    pub q: T,
}

impl<T: Real> Default for ClassCheckConfig<T> {
    fn default() -> Self {
        Self {
            grid_points: 33,
            slack: T::lit(1e-9),
            s: T::one(),
            q: T::one(),
        }
    }
}

impl<T: Real> ClassCheckConfig<T> {
    pub fn with_s(mut self, s: T) -> Self {
        self.s = s;
        self
    }

    pub fn with_q(mut self, q: T) -> Self {
        self.q = q;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::InvalidParameter {
                name: "grid_points",
                value: self.grid_points as f64,
                reason: "need at least 3 grid points",
            });
        }
        if !(self.slack >= T::zero()) {
            return Err(Error::InvalidParameter {
                name: "slack",
                value: self.slack.as_f64(),
                reason: "slack must be non-negative",
            });
        }
        Ok(())
    }
}

/// A grid point at which `lhs <= rhs + slack` fails.
///
/// For two-point inequalities `(x, y, t)` are the defining arguments. Monotonicity
/// witnesses use `t = 0`, `lhs = g(y)`, `rhs = g(x)` with `x < y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness<T> {
    pub x: T,
    pub y: T,
    pub t: T,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassCheck<T> {
    pub holds: bool,
    pub witnesses: Vec<Witness<T>>,
}

impl<T> ClassCheck<T> {
    fn from_witnesses(witnesses: Vec<Witness<T>>) -> Self {
        Self {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

const LOG_COMPARE_ABOVE: f64 = 1e3;

fn violates<T: Real>(lhs: T, rhs: T, slack: T) -> bool {
    let big = T::lit(LOG_COMPARE_ABOVE);
    if lhs > big && rhs > big {
        lhs.ln() > rhs.ln() + slack
    } else {
        lhs > rhs + slack
    }
}

fn sample<T: Real, G: Fn(T) -> Result<T>>(g: &G, grid: &[T]) -> Result<Vec<T>> {
    grid.iter().map(|&x| g(x)).collect()
}

/// Generic two-point check `g(mix(x, y, t)) <= combine(g(x), g(y), t)`.
fn two_point<T, G, M, C>(
    g: &G,
    interval: Interval<T>,
    cfg: &ClassCheckConfig<T>,
    values: &[T],
    mix: M,
    combine: C,
) -> Result<ClassCheck<T>>
where
    T: Real,
    G: Fn(T) -> Result<T>,
    M: Fn(T, T, T) -> T,
    C: Fn(T, T, T) -> T,
{
    let xs = interval.uniform_grid(cfg.grid_points);
    let ts = Interval::new(T::zero(), T::one())?.uniform_grid(cfg.grid_points);
    let mut witnesses = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for &t in &ts {
                let z = mix(x, y, t).max(interval.lo()).min(interval.hi());
                let lhs = g(z)?;
                let rhs = combine(values[i], values[j], t);
                if violates(lhs, rhs, cfg.slack) {
                    witnesses.push(Witness { x, y, t, lhs, rhs });
                }
            }
        }
    }
    Ok(ClassCheck::from_witnesses(witnesses))
}

/// Ordinary convexity: `g(tx + (1-t)y) <= t g(x) + (1-t) g(y)`.
pub fn is_convex<T: Real, G: Fn(T) -> Result<T>>(
    g: G,
    interval: Interval<T>,
    cfg: &ClassCheckConfig<T>,
) -> Result<ClassCheck<T>> {
    cfg.validate()?;
    let values = sample(&g, &interval.uniform_grid(cfg.grid_points))?;
    two_point(
        &g,
        interval,
        cfg,
        &values,
        |x, y, t| t * x + (T::one() - t) * y,
        |gx, gy, t| t * gx + (T::one() - t) * gy,
    )
}

/// s-convexity in the second sense: weights `t^s`, `(1-t)^s`; `g` must be non-negative.
pub fn is_s_convex<T: Real, G: Fn(T) -> Result<T>>(
    g: G,
    interval: Interval<T>,
    s: T,
    cfg: &ClassCheckConfig<T>,
) -> Result<ClassCheck<T>> {
    cfg.validate()?;
    check_s(s)?;
    let grid = interval.uniform_grid(cfg.grid_points);
    let values = sample(&g, &grid)?;
    if let Some((x, v)) = grid.iter().zip(&values).find(|(_, &v)| v < -cfg.slack) {
        return Err(Error::NegativeValue {
            x: x.as_f64(),
            value: v.as_f64(),
        });
    }
    two_point(
        &g,
        interval,
        cfg,
        &values,
        |x, y, t| t * x + (T::one() - t) * y,
        |gx, gy, t| t.powf(s) * gx + (T::one() - t).powf(s) * gy,
    )
}

/// Geometric convexity: `g(x^t y^{1-t}) <= g(x)^t g(y)^{1-t}`.
pub fn is_geometrically_convex<T: Real, G: Fn(T) -> Result<T>>(
    g: G,
    interval: Interval<T>,
    cfg: &ClassCheckConfig<T>,
) -> Result<ClassCheck<T>> {
    is_s_geometrically_convex(g, interval, T::one(), cfg)
}

/// s-geometric convexity: `g(x^t y^{1-t}) <= g(x)^{t^s} g(y)^{(1-t)^s}`.
///
/// Taking `x = y`, `t = 1/2` gives `g(x) <= g(x)^{2^{1-s}}`, so for `s < 1`
/// any accepted `g` satisfies `g >= 1` on the grid.
pub fn is_s_geometrically_convex<T: Real, G: Fn(T) -> Result<T>>(
    g: G,
    interval: Interval<T>,
    s: T,
    cfg: &ClassCheckConfig<T>,
) -> Result<ClassCheck<T>> {
    cfg.validate()?;
    check_s(s)?;
    if interval.lo() <= T::zero() {
        return Err(Error::Precondition(
            "geometric convexity needs a positive interval".into(),
        ));
    }
    let grid = interval.uniform_grid(cfg.grid_points);
    let values = sample(&g, &grid)?;
    if let Some((x, v)) = grid.iter().zip(&values).find(|(_, &v)| v <= T::zero()) {
        return Err(Error::NonPositiveValue {
            x: x.as_f64(),
            value: v.as_f64(),
        });
    }
    two_point(
        &g,
        interval,
        cfg,
        &values,
        |x, y, t| (t * x.ln() + (T::one() - t) * y.ln()).exp(),
        |gx, gy, t| (t.powf(s) * gx.ln() + (T::one() - t).powf(s) * gy.ln()).exp(),
    )
}

/// Non-strict decrease over the sorted grid: `g(x_{i+1}) <= g(x_i) + slack`.
pub fn is_monotone_decreasing<T: Real, G: Fn(T) -> Result<T>>(
    g: G,
    interval: Interval<T>,
    cfg: &ClassCheckConfig<T>,
) -> Result<ClassCheck<T>> {
    cfg.validate()?;
    let grid = interval.uniform_grid(cfg.grid_points);
    let values = sample(&g, &grid)?;
    let witnesses = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[1] > v[0] + cfg.slack)
        .map(|(x, v)| Witness {
            x: x[0],
            y: x[1],
            t: T::zero(),
            lhs: v[1],
            rhs: v[0],
        })
        .collect();
    Ok(ClassCheck::from_witnesses(witnesses))
}

/// `μ^{α^s} <= μ^{αs}` for `μ, α, s ∈ (0, 1]`.
pub fn check_pointwise_key<T: Real>(mu: T, alpha: T, s: T) -> Result<bool> {
    for (name, v) in [("mu", mu), ("alpha", alpha), ("s", s)] {
        if !(v > T::zero() && v <= T::one()) {
            return Err(Error::InvalidParameter {
                name,
                value: v.as_f64(),
                reason: "must lie in (0, 1]",
            });
        }
    }
    Ok(mu.powf(alpha.powf(s)) <= mu.powf(alpha * s))
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

/// Preconditions shared by the s-geometric bounds, evaluated on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<T> {
    /// `|f'|^q` is s-geometrically convex.
    pub class_ok: bool,
    /// `|f'|` is non-increasing.
    pub monotone_decreasing_ok: bool,
    /// `|f'(a)| <= 1`.
    pub fprime_a_le_1: bool,
    pub fprime_a: T,
    pub class_witnesses: Vec<Witness<T>>,
    pub monotone_witnesses: Vec<Witness<T>>,
    pub a: T,
    pub b: T,
    pub s: T,
    pub q: T,
}

impl<T> HypothesisReport<T> {
    pub fn all_ok(&self) -> bool {
        self.class_ok && self.monotone_decreasing_ok && self.fprime_a_le_1
    }
}

/// Bundles the class, monotonicity and `|f'(a)| <= 1` checks for `m` on `[a, b]`.
pub fn theorem_hypotheses<T: Real>(
    m: &FunctionModel<T>,
    a: T,
    b: T,
    s: T,
    q: T,
    cfg: &ClassCheckConfig<T>,
) -> Result<HypothesisReport<T>> {
    m.check_subinterval(a, b)?;
    if !(q >= T::one()) {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q.as_f64(),
            reason: "q must be at least 1",
        });
    }
    let interval = Interval::new(a, b)?;
    let abs_pow = |x: T| -> Result<T> { Ok(m.abs_fprime(x)?.powf(q)) };
    let abs = |x: T| -> Result<T> { Ok(m.abs_fprime(x)?) };

    // |f'| vanishing somewhere means the class (which needs g > 0) cannot hold
    let class = match is_s_geometrically_convex(abs_pow, interval, s, cfg) {
        Ok(c) => c,
        Err(Error::NonPositiveValue { x, value }) => ClassCheck {
            holds: false,
            witnesses: vec![Witness {
                x: T::lit(x),
                y: T::lit(x),
                t: T::half(),
                lhs: T::lit(value),
                rhs: T::zero(),
            }],
        },
        Err(e) => return Err(e),
    };
    let monotone = is_monotone_decreasing(abs, interval, cfg)?;
    let fprime_a = m.abs_fprime(a)?;
    Ok(HypothesisReport {
        class_ok: class.holds,
        monotone_decreasing_ok: monotone.holds,
        fprime_a_le_1: fprime_a <= T::one() + cfg.slack,
        fprime_a,
        class_witnesses: class.witnesses,
        monotone_witnesses: monotone.witnesses,
        a,
        b,
        s,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    fn cfg() -> ClassCheckConfig<f64> {
        ClassCheckConfig::default()
    }

    #[test]
    fn convexity_examples() {
        assert!(is_convex(|x: f64| Ok(x * x), iv(0.5, 2.0), &cfg()).unwrap().holds);
        let sqrt = is_convex(|x: f64| Ok(x.sqrt()), iv(0.5, 2.0), &cfg()).unwrap();
        assert!(!sqrt.holds);
        let w = sqrt.witnesses[0];
        assert!(w.lhs > w.rhs + 1e-9);
        assert!(is_convex(|x: f64| Ok((3.0 * x - 1.0).abs()), iv(0.5, 2.0), &cfg()).unwrap().holds);
    }

    #[test]
    fn s_convexity_examples() {
        let unit = iv(0.0, 1.0);
        assert!(is_s_convex(|x: f64| Ok(x), unit, 1.0, &cfg()).unwrap().holds);
        assert!(is_s_convex(|x: f64| Ok(x.sqrt()), unit, 0.5, &cfg()).unwrap().holds);
        assert!(matches!(
            is_s_convex(|x: f64| Ok(-x), iv(0.5, 1.0), 0.5, &cfg()),
            Err(Error::NegativeValue { .. })
        ));
        // at s = 1 the s-convex and convex checks agree
        for g in [|x: f64| x * x, |x: f64| x.sqrt(), |x: f64| (x - 0.5).abs()] {
            let a = is_convex(|x| Ok(g(x)), unit, &cfg()).unwrap();
            let b = is_s_convex(|x| Ok(g(x)), unit, 1.0, &cfg()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn exponential_decay_is_not_geometrically_convex() {
        let r = is_geometrically_convex(|x: f64| Ok((-x).exp()), iv(0.1, 2.0), &cfg()).unwrap();
        assert!(!r.holds);
        assert!(r.witnesses.iter().all(|w| w.lhs > w.rhs + 1e-9));
        // exponential growth is
        let r = is_geometrically_convex(|x: f64| Ok(x.exp()), iv(0.1, 2.0), &cfg()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn power_functions_are_geometric_equality_cases() {
        for c in [-2.5, -1.0, 0.5, 3.0] {
            let r = is_geometrically_convex(|x: f64| Ok(x.powf(c)), iv(0.2, 3.0), &cfg()).unwrap();
            assert!(r.holds, "c = {c}");
        }
        assert!(matches!(
            is_geometrically_convex(|x: f64| Ok(x - 1.0), iv(0.5, 2.0), &cfg()),
            Err(Error::NonPositiveValue { .. })
        ));
    }

    #[test]
    fn s_geometric_examples() {
        // |f'|^2 for the power model with s = 0.5
        let g = |x: f64| Ok(x.powf((0.5 - 1.0) * 2.0));
        assert!(is_s_geometrically_convex(g, iv(0.01, 1.0), 0.5, &cfg()).unwrap().holds);

        let r = is_s_geometrically_convex(|_x: f64| Ok(0.5), iv(0.2, 1.0), 0.5, &cfg()).unwrap();
        assert!(!r.holds);
        let diag = r
            .witnesses
            .iter()
            .find(|w| w.x == w.y && w.t == 0.5)
            .expect("diagonal witness");
        assert!((diag.lhs - 0.5).abs() < 1e-15);
        assert!((diag.rhs - 0.5f64.powf(2f64.sqrt())).abs() < 1e-12);

        // s = 1 on the diagonal is an equality
        let r = is_s_geometrically_convex(|x: f64| Ok(0.3 + x), iv(0.2, 1.0), 1.0, &cfg()).unwrap();
        assert!(r.witnesses.iter().all(|w| w.x != w.y));
    }

    #[test]
    fn monotone_examples() {
        let c = cfg();
        assert!(is_monotone_decreasing(|x: f64| Ok(x.powf(-0.5)), iv(0.01, 1.0), &c).unwrap().holds);
        let r = is_monotone_decreasing(|x: f64| Ok(x * x), iv(0.5, 2.0), &c).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witnesses.len(), c.grid_points - 1);
        assert!(is_monotone_decreasing(|_x: f64| Ok(4.0), iv(0.5, 2.0), &c).unwrap().holds);
    }

    #[test]
    fn pointwise_key_examples() {
        assert!(check_pointwise_key(0.5, 0.5, 0.5).unwrap());
        assert!(check_pointwise_key(1.0, 0.3, 0.7).unwrap());
        assert!(check_pointwise_key(0.9, 1.0, 1.0).unwrap());
        assert!(check_pointwise_key(0.0, 0.5, 0.5).is_err());
        assert!(check_pointwise_key(0.5, 1.5, 0.5).is_err());
    }

    #[test]
    fn hypothesis_bundles() {
        let power = FunctionModel::power(0.5, iv(0.01, 1.0)).unwrap();
        let r = theorem_hypotheses(&power, 0.25, 0.75, 0.5, 1.0, &cfg()).unwrap();
        assert!(r.class_ok);
        assert!(r.monotone_decreasing_ok);
        assert!(!r.fprime_a_le_1);
        assert!((r.fprime_a - 2.0).abs() < 1e-15);

        let exp = FunctionModel::exp(1.0, iv(1.0, 2.0)).unwrap();
        let r = theorem_hypotheses(&exp, 1.0, 2.0, 1.0, 1.0, &cfg()).unwrap();
        assert!(!r.class_ok);
        assert!(r.monotone_decreasing_ok);
        assert!(r.fprime_a_le_1);
        assert!((r.fprime_a - (-1.0f64).exp()).abs() < 1e-16);

        let recip = FunctionModel::exp_recip(0.5, iv(1.0, 4.0)).unwrap();
        let r = theorem_hypotheses(&recip, 1.0, 2.0, 1.0, 2.0, &cfg()).unwrap();
        assert!(r.all_ok(), "{r:?}");

        assert!(theorem_hypotheses(&exp, 1.5, 1.5, 1.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn rejects_tiny_grids() {
        let c = ClassCheckConfig {
            grid_points: 2,
            ..cfg()
        };
        assert!(is_convex(|x: f64| Ok(x), iv(0.0, 1.0), &c).is_err());
    }
}
