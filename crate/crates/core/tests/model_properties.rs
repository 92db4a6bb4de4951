use hadamard_core::{FunctionModel, Interval, Model64};

fn corpus() -> Vec<Model64> {
    let unit = Interval::new(0.05, 1.0).unwrap();
    let pos = Interval::new(0.5, 4.0).unwrap();
    vec![
        FunctionModel::power(0.3, unit).unwrap(),
        FunctionModel::power(0.5, unit).unwrap(),
        FunctionModel::power(0.9, unit).unwrap(),
        FunctionModel::exp(1.0, pos).unwrap(),
        FunctionModel::exp(2.5, pos).unwrap(),
        FunctionModel::exp_recip(0.5, pos).unwrap(),
        FunctionModel::from_expr("ln(x)", pos).unwrap(),
        FunctionModel::from_expr("x^3 - 2*x", pos).unwrap(),
        FunctionModel::from_expr("exp(-x^2) + x^0.5", pos).unwrap(),
    ]
}

#[test]
fn derivatives_match_finite_differences() {
    for m in corpus() {
        let d = m.domain();
        let h0 = 1e-5;
        // stay h away from the endpoints so the stencil is inside the domain
        let inner = Interval::new(d.lo() + 2.0 * h0, d.hi() - 2.0 * h0).unwrap();
        for x in inner.chebyshev_grid(64) {
            let h = h0 * x.abs().max(1.0);
            let fd = (m.value(x + h).unwrap() - m.value(x - h).unwrap()) / (2.0 * h);
            let exact = m.fprime(x).unwrap();
            let scale = exact.abs().max(1.0);
            assert!(
                (fd - exact).abs() <= 1e-6 * scale,
                "{}: x = {x}, fd = {fd}, exact = {exact}",
                m.name()
            );
        }
    }
}

#[test]
fn builtin_and_parsed_derivatives_agree() {
    let unit = Interval::new(0.05f64, 1.0).unwrap();
    let pos = Interval::new(0.5, 4.0).unwrap();
    let pairs = [
        (FunctionModel::power(0.5, unit).unwrap(), FunctionModel::from_expr("x^0.5/0.5", unit).unwrap()),
        (FunctionModel::exp(1.5, pos).unwrap(), FunctionModel::from_expr("exp(-1.5*x)", pos).unwrap()),
        (FunctionModel::exp_recip(0.5, pos).unwrap(), FunctionModel::from_expr("exp(0.5/x)", pos).unwrap()),
    ];
    for (builtin, parsed) in pairs {
        for x in builtin.domain().chebyshev_grid(64) {
            let a = builtin.fprime(x).unwrap();
            let b = parsed.fprime(x).unwrap();
            assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0), "{} at {x}", builtin.name());
        }
    }
}

#[test]
fn power_model_exponent_inequalities() {
    // (s-1) q (t^s - t) <= 0 and (s-1) q ((1-t)^s - (1-t)) <= 0
    for s in [0.1, 0.3, 0.5, 0.9, 0.99] {
        for q in [1.0, 1.5, 2.0, 4.0] {
            for i in 0..=10 {
                let t = i as f64 / 10.0;
                let f = |t: f64| (s - 1.0) * q * (t.powf(s) - t);
                assert!(f(t) <= 0.0, "s = {s}, q = {q}, t = {t}");
                assert!(f(1.0 - t) <= 0.0, "s = {s}, q = {q}, t = {t}");
            }
        }
    }
}

#[test]
fn single_precision_models_evaluate() {
    let m = FunctionModel::<f32>::power(0.5, Interval::new(0.05f32, 1.0).unwrap()).unwrap();
    assert!((m.value(0.25).unwrap() - 1.0).abs() < 1e-6);
    assert!((m.fprime(0.25).unwrap() - 2.0).abs() < 1e-6);
}
