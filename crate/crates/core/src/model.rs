//! Function objects the bounds quantify over.

use std::fmt;
use std::sync::Arc;

use crate::error::DomainError;
use crate::expr::Expr;
use crate::{Error, Real, Result};

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Precondition(format!(
                "interval [{lo}, {hi}] must be finite with lo < hi"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// `n` evenly spaced points including both endpoints.
    pub fn uniform_grid(&self, n: usize) -> Vec<T> {
        assert!(n >= 2, "grid needs at least two points");
        let step = (self.hi - self.lo) / T::lit((n - 1) as f64);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + step * T::lit(i as f64)
                }
            })
            .collect()
    }

    /// `n` Chebyshev–Lobatto points (clustered toward the endpoints), ascending.
    pub fn chebyshev_grid(&self, n: usize) -> Vec<T> {
        assert!(n >= 2, "grid needs at least two points");
        let mid = T::half() * (self.lo + self.hi);
        let half = T::half() * (self.hi - self.lo);
        (0..n)
            .map(|k| {
                if k == 0 {
                    self.lo
                } else if k == n - 1 {
                    self.hi
                } else {
                    let theta = T::PI() * T::lit(k as f64) / T::lit((n - 1) as f64);
                    mid - half * theta.cos()
                }
            })
            .collect()
    }
}

type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Clone)]
enum Kind<T> {
    Power { s: T },
    Exp { lambda: T },
    ExpRecip { lambda: T },
    Expr { f: Expr<T>, df: Expr<T> },
    Custom { f: RealFn<T>, df: RealFn<T> },
}

/// A differentiable `f` together with its exact derivative on a closed domain.
///
/// Models are immutable; cloning is cheap apart from expression trees.
#[derive(Clone)]
pub struct FunctionModel<T> {
    name: String,
    domain: Interval<T>,
    kind: Kind<T>,
}

impl<T: Real> fmt::Debug for FunctionModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionModel")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// Default number of Chebyshev probe points used to validate a new model.
pub const PROBE_POINTS: usize = 64;

impl<T: Real> FunctionModel<T> {
    /// `f(x) = x^s / s` on `domain ⊆ (0, 1]`, so `|f'(x)|^q = x^{(s-1)q}`.
    pub fn power(s: T, domain: Interval<T>) -> Result<Self> {
        if !(s > T::zero() && s < T::one()) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s.as_f64(),
                reason: "power model requires 0 < s < 1",
            });
        }
        if domain.lo() <= T::zero() || domain.hi() > T::one() {
            return Err(Error::Precondition(format!(
                "power model domain [{}, {}] must lie in (0, 1]",
                domain.lo(),
                domain.hi()
            )));
        }
        Self::validated(format!("power({s})"), domain, Kind::Power { s })
    }

    /// `f(x) = e^{-λx}`.
    pub fn exp(lambda: T, domain: Interval<T>) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda.as_f64(),
                reason: "exponential model requires lambda > 0",
            });
        }
        Self::validated(format!("exp({lambda})"), domain, Kind::Exp { lambda })
    }

    /// `f(x) = e^{λ/x}` on a positive domain.
    ///
    /// `|f'(x)| = λ x^{-2} e^{λ/x}` is decreasing and geometrically convex, so
    /// this family satisfies the `s = 1` hypotheses wherever `|f'(a)| <= 1`.
    pub fn exp_recip(lambda: T, domain: Interval<T>) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda.as_f64(),
                reason: "reciprocal exponential model requires lambda > 0",
            });
        }
        if domain.lo() <= T::zero() {
            return Err(Error::Precondition(
                "reciprocal exponential model needs a positive domain".into(),
            ));
        }
        Self::validated(format!("exp-recip({lambda})"), domain, Kind::ExpRecip { lambda })
    }

    /// Model from expression text; the derivative is taken symbolically.
    pub fn from_expr(src: &str, domain: Interval<T>) -> Result<Self> {
        let f = Expr::parse(src)?;
        let df = f.differentiate();
        Self::validated(src.trim().to_string(), domain, Kind::Expr { f, df })
    }

    /// Model from a pair of closures. The caller guarantees `df` is the derivative of `f`.
    pub fn from_fns<F, D>(name: impl Into<String>, domain: Interval<T>, f: F, df: D) -> Result<Self>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
        D: Fn(T) -> T + Send + Sync + 'static,
    {
        Self::validated(
            name.into(),
            domain,
            Kind::Custom {
                f: Arc::new(f),
                df: Arc::new(df),
            },
        )
    }

    fn validated(name: String, domain: Interval<T>, kind: Kind<T>) -> Result<Self> {
        let m = Self { name, domain, kind };
        for x in domain.chebyshev_grid(PROBE_POINTS) {
            m.value(x)?;
            m.fprime(x)?;
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    /// The `s` of a power model.
    pub fn power_exponent(&self) -> Option<T> {
        match self.kind {
            Kind::Power { s } => Some(s),
            _ => None,
        }
    }

    pub fn value(&self, x: T) -> Result<T, DomainError> {
        let v = match &self.kind {
            Kind::Power { s } => x.powf(*s) / *s,
            Kind::Exp { lambda } => (-*lambda * x).exp(),
            Kind::ExpRecip { lambda } => (*lambda / x).exp(),
            Kind::Expr { f, .. } => f.eval(x)?,
            Kind::Custom { f, .. } => f(x),
        };
        finite(x, v, "f")
    }

    pub fn fprime(&self, x: T) -> Result<T, DomainError> {
        let v = match &self.kind {
            Kind::Power { s } => x.powf(*s - T::one()),
            Kind::Exp { lambda } => -*lambda * (-*lambda * x).exp(),
            Kind::ExpRecip { lambda } => -*lambda / (x * x) * (*lambda / x).exp(),
            Kind::Expr { df, .. } => df.eval(x)?,
            Kind::Custom { df, .. } => df(x),
        };
        finite(x, v, "f'")
    }

    pub fn abs_fprime(&self, x: T) -> Result<T, DomainError> {
        self.fprime(x).map(|v| v.abs())
    }

    /// Checks `a < b` and `[a, b] ⊆ domain`.
    pub fn check_subinterval(&self, a: T, b: T) -> Result<()> {
        if !(a < b) {
            return Err(Error::Precondition(format!("need a < b, got a = {a}, b = {b}")));
        }
        if !(self.domain.contains(a) && self.domain.contains(b)) {
            return Err(Error::Precondition(format!(
                "[{a}, {b}] is not inside the domain [{}, {}] of `{}`",
                self.domain.lo(),
                self.domain.hi(),
                self.name
            )));
        }
        Ok(())
    }
}

fn finite<T: Real>(x: T, v: T, what: &str) -> Result<T, DomainError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DomainError::new(x.as_f64(), format!("{what} is not finite")))
    }
}
