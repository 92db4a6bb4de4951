//! One-variable arithmetic expressions with exact symbolic derivatives.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          // right-associative
//! primary := number | 'x' | 'exp' '(' expr ')' | 'ln' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `-x^2` therefore parses as `-(x^2)`, and `2^-x^2` as `2^(-(x^2))`.

mod diff;
mod parse;

use std::fmt;

use crate::error::DomainError;
use crate::Real;

pub use parse::ParseError;

/// Expression tree over the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    Const(T),
    Var,
    Add(Box<Expr<T>>, Box<Expr<T>>),
    Sub(Box<Expr<T>>, Box<Expr<T>>),
    Mul(Box<Expr<T>>, Box<Expr<T>>),
    Div(Box<Expr<T>>, Box<Expr<T>>),
    Pow(Box<Expr<T>>, Box<Expr<T>>),
    Exp(Box<Expr<T>>),
    Ln(Box<Expr<T>>),
    Neg(Box<Expr<T>>),
}

impl<T: Real> Expr<T> {
    /// Parses `src` according to the module grammar.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse::parse(src)
    }

    /// Symbolic derivative with respect to `x`.
    pub fn differentiate(&self) -> Self {
        diff::differentiate(self)
    }

    /// Evaluates the expression at `x`.
    ///
    /// Any operation that would leave the reals (logarithm of a non-positive
    /// number, division by zero, fractional power of a negative base,
    /// overflow) is reported as a [`DomainError`] instead of a NaN.
    pub fn eval(&self, x: T) -> Result<T, DomainError> {
        let fail = |reason: &str| DomainError::new(x.as_f64(), reason);
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Add(l, r) => l.eval(x)? + r.eval(x)?,
            Expr::Sub(l, r) => l.eval(x)? - r.eval(x)?,
            Expr::Mul(l, r) => l.eval(x)? * r.eval(x)?,
            Expr::Div(l, r) => {
                let num = l.eval(x)?;
                let den = r.eval(x)?;
                if den == T::zero() {
                    return Err(fail("division by zero"));
                }
                num / den
            }
            Expr::Pow(base, exponent) => {
                let b = base.eval(x)?;
                let e = exponent.eval(x)?;
                if b < T::zero() && e.fract() != T::zero() {
                    return Err(fail("fractional power of a negative base"));
                }
                if b == T::zero() && e < T::zero() {
                    return Err(fail("negative power of zero"));
                }
                b.powf(e)
            }
            Expr::Exp(arg) => arg.eval(x)?.exp(),
            Expr::Ln(arg) => {
                let a = arg.eval(x)?;
                if a <= T::zero() {
                    return Err(fail("logarithm of a non-positive argument"));
                }
                a.ln()
            }
            Expr::Neg(arg) => -arg.eval(x)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail("non-finite intermediate value"))
        }
    }

    /// True if the subtree depends on `x`.
    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Add(l, r)
            | Expr::Sub(l, r)
            | Expr::Mul(l, r)
            | Expr::Div(l, r)
            | Expr::Pow(l, r) => l.contains_var() || r.contains_var(),
            Expr::Exp(a) | Expr::Ln(a) | Expr::Neg(a) => a.contains_var(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Add(l, r)
            | Expr::Sub(l, r)
            | Expr::Mul(l, r)
            | Expr::Div(l, r)
            | Expr::Pow(l, r) => 1 + l.size() + r.size(),
            Expr::Exp(a) | Expr::Ln(a) | Expr::Neg(a) => 1 + a.size(),
        }
    }
}

// Convenience constructors used by the differentiator and tests.
impl<T> Expr<T> {
    pub fn constant(c: T) -> Self {
        Expr::Const(c)
    }
    pub fn add(l: Self, r: Self) -> Self {
        Expr::Add(Box::new(l), Box::new(r))
    }
    pub fn sub(l: Self, r: Self) -> Self {
        Expr::Sub(Box::new(l), Box::new(r))
    }
    pub fn mul(l: Self, r: Self) -> Self {
        Expr::Mul(Box::new(l), Box::new(r))
    }
    pub fn div(l: Self, r: Self) -> Self {
        Expr::Div(Box::new(l), Box::new(r))
    }
    pub fn pow(l: Self, r: Self) -> Self {
        Expr::Pow(Box::new(l), Box::new(r))
    }
    pub fn exp(a: Self) -> Self {
        Expr::Exp(Box::new(a))
    }
    pub fn ln(a: Self) -> Self {
        Expr::Ln(Box::new(a))
    }
    pub fn neg(a: Self) -> Self {
        Expr::Neg(Box::new(a))
    }
}

/// Fully parenthesized rendering; re-parsing it yields the same tree.
impl<T: fmt::Display> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str("x"),
            Expr::Add(l, r) => write!(f, "({l} + {r})"),
            Expr::Sub(l, r) => write!(f, "({l} - {r})"),
            Expr::Mul(l, r) => write!(f, "({l} * {r})"),
            Expr::Div(l, r) => write!(f, "({l} / {r})"),
            Expr::Pow(l, r) => write!(f, "({l} ^ {r})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, x: f64) -> f64 {
        Expr::<f64>::parse(src).unwrap().eval(x).unwrap()
    }

    fn deriv(src: &str, x: f64) -> f64 {
        Expr::<f64>::parse(src)
            .unwrap()
            .differentiate()
            .eval(x)
            .unwrap()
    }

    #[test]
    fn evaluates_examples() {
        assert_eq!(eval("x^2", 3.0), 9.0);
        assert!((eval("x^0.5/0.5", 0.25) - 1.0).abs() < 1e-15);
        assert_eq!(eval("ln(x)", 1.0), 0.0);
        assert!((eval("x^(x)", 2.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("-x^2", 3.0), -9.0);
        assert_eq!(eval("2^3^2", 1.0), 512.0);
        assert_eq!(eval("1 - 2 - 3", 0.0), -4.0);
        assert_eq!(eval("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(eval("2 + 3 * x", 2.0), 8.0);
        assert_eq!(eval("x^-1", 4.0), 0.25);
        assert_eq!(eval("-x*-x", 3.0), 9.0);
        assert!((eval("1e-3 * x", 2.0) - 2e-3).abs() < 1e-18);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(deriv("x^2", 3.0), 6.0);
        assert!((deriv("x^0.5/0.5", 0.25) - 2.0).abs() < 1e-14);
        assert_eq!(deriv("exp(x)", 0.0), 1.0);
        // d/dx x^x = x^x (ln x + 1)
        let expected = 4.0 * (2f64.ln() + 1.0);
        assert!((deriv("x^x", 2.0) - expected).abs() < 1e-13);
        assert!((deriv("ln(x)", 4.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn domain_errors_are_reported() {
        let e = Expr::<f64>::parse("ln(x)").unwrap();
        assert!(e.eval(0.0).is_err());
        let e = Expr::<f64>::parse("1/(x-1)").unwrap();
        assert!(e.eval(1.0).is_err());
        let e = Expr::<f64>::parse("(x-2)^0.5").unwrap();
        assert!(e.eval(1.0).is_err());
        let e = Expr::<f64>::parse("x^-1").unwrap();
        assert!(e.eval(0.0).is_err());
        let e = Expr::<f64>::parse("exp(exp(x))").unwrap();
        assert!(e.eval(10.0).is_err());
        // integer powers of negative bases are fine
        let e = Expr::<f64>::parse("(x-2)^2").unwrap();
        assert_eq!(e.eval(1.0).unwrap(), 1.0);
    }

    #[test]
    fn display_round_trips() {
        for src in ["x^0.5/0.5", "-x^2 + exp(-(x))", "ln(x*x) - 3/x", "2^x^2"] {
            let e = Expr::<f64>::parse(src).unwrap();
            let again = Expr::<f64>::parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{src}");
        }
    }

    #[test]
    fn works_in_single_precision() {
        let e = Expr::<f32>::parse("x^2 + 1").unwrap();
        assert_eq!(e.differentiate().eval(1.5).unwrap(), 3.0);
    }
}
