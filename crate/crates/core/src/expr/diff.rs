use super::Expr;
use crate::Real;

fn c<T: Real>(v: f64) -> Expr<T> {
    Expr::Const(T::lit(v))
}

pub(super) fn differentiate<T: Real>(e: &Expr<T>) -> Expr<T> {
    match e {
        Expr::Const(_) => c(0.0),
        Expr::Var => c(1.0),
        Expr::Add(l, r) => Expr::add(differentiate(l), differentiate(r)),
        Expr::Sub(l, r) => Expr::sub(differentiate(l), differentiate(r)),
        Expr::Mul(l, r) => Expr::add(
            Expr::mul(differentiate(l), (**r).clone()),
            Expr::mul((**l).clone(), differentiate(r)),
        ),
        Expr::Div(l, r) => Expr::div(
            Expr::sub(
                Expr::mul(differentiate(l), (**r).clone()),
                Expr::mul((**l).clone(), differentiate(r)),
            ),
            Expr::pow((**r).clone(), c(2.0)),
        ),
        Expr::Pow(base, exponent) if !exponent.contains_var() => {
            // n * b^(n-1) * b'
            Expr::mul(
                Expr::mul(
                    (**exponent).clone(),
                    Expr::pow((**base).clone(), Expr::sub((**exponent).clone(), c(1.0))),
                ),
                differentiate(base),
            )
        }
        Expr::Pow(base, exponent) => {
            // b^e = exp(e ln b)
            let rewritten = Expr::exp(Expr::mul((**exponent).clone(), Expr::ln((**base).clone())));
            differentiate(&rewritten)
        }
        Expr::Exp(arg) => Expr::mul(e.clone(), differentiate(arg)),
        Expr::Ln(arg) => Expr::div(differentiate(arg), (**arg).clone()),
        Expr::Neg(arg) => Expr::neg(differentiate(arg)),
    }
}
