use hadamard_core::{Expr, Expr64};
use proptest::prelude::*;

/// Random expressions that stay finite and moderate on [0.5, 2].
fn arb_expr() -> impl Strategy<Value = Expr64> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        (0.25f64..3.0).prop_map(|c| Expr::Const((c * 100.0).round() / 100.0)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::sub(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::mul(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::div(l, r)),
            (inner.clone(), 0.5f64..2.5).prop_map(|(b, e)| Expr::pow(b, Expr::Const(e))),
            inner.clone().prop_map(|e| Expr::exp(Expr::div(e, Expr::Const(4.0)))),
            inner.clone().prop_map(|e| Expr::ln(Expr::add(Expr::mul(e.clone(), e), Expr::Const(1.0)))),
            inner.clone().prop_map(Expr::neg),
            Just(Expr::pow(Expr::Var, Expr::Var)),
        ]
    })
}

fn central_difference(e: &Expr64, x: f64) -> Option<f64> {
    let h = 1e-5 * x.abs().max(1.0);
    let hi = e.eval(x + h).ok()?;
    let lo = e.eval(x - h).ok()?;
    Some((hi - lo) / (2.0 * h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn derivative_matches_finite_difference(e in arb_expr(), x in 0.5f64..2.0) {
        let d = e.differentiate();
        let (Ok(value), Ok(slope)) = (e.eval(x), d.eval(x)) else {
            return Err(TestCaseError::reject("outside domain"));
        };
        // keep to tame magnitudes so FD truncation stays below tolerance
        prop_assume!(value.abs() < 1e3 && slope.abs() < 1e3);
        let Some(fd) = central_difference(&e, x) else {
            return Err(TestCaseError::reject("outside domain"));
        };
        // third-derivative guard via a second-order estimate of curvature change
        let h = 1e-2;
        let curvature = |y: f64| -> Option<f64> {
            Some((e.eval(y + h).ok()? - 2.0 * e.eval(y).ok()? + e.eval(y - h).ok()?) / (h * h))
        };
        let (Some(c1), Some(c2)) = (curvature(x - h), curvature(x + h)) else {
            return Err(TestCaseError::reject("outside domain"));
        };
        prop_assume!(((c2 - c1) / (2.0 * h)).abs() < 1e4);
        let tol = 1e-6 * value.abs().max(1.0).max(slope.abs());
        prop_assert!((slope - fd).abs() <= tol, "e = {e}, x = {x}, symbolic {slope}, fd {fd}");
    }

    #[test]
    fn print_parse_is_stable(e in arb_expr()) {
        let first = Expr64::parse(&e.to_string()).unwrap();
        let second = Expr64::parse(&first.to_string()).unwrap();
        prop_assert_eq!(&first, &second);
        // printing introduces no change for trees with non-negative constants
        prop_assert_eq!(first, e);
    }
}

#[test]
fn general_power_rewrite() {
    // d/dx 2^x = 2^x ln 2; d/dx x^(x^2) = x^(x^2) (2x ln x + x)
    let e = Expr64::parse("2^x").unwrap().differentiate();
    assert!((e.eval(3.0).unwrap() - 8.0 * 2f64.ln()).abs() < 1e-13);
    let e = Expr64::parse("x^(x^2)").unwrap().differentiate();
    let x: f64 = 1.5;
    let expected = x.powf(x * x) * (2.0 * x * x.ln() + x);
    assert!((e.eval(x).unwrap() - expected).abs() < 1e-12);
}
