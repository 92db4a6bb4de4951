use hadamard_harness::evaluate::EvalSettings;
use hadamard_harness::tightness::SearchSettings;
use hadamard_harness::{optimize_tightness, HarnessError, ModelSpec, ParamBox, TheoremTag, Tolerances};

fn settings() -> EvalSettings {
    EvalSettings {
        tolerances: Tolerances::default(),
        grid_points: 17,
    }
}

fn unit_box() -> ParamBox {
    ParamBox {
        a: [1.0, 2.0],
        b: [1.0, 2.0],
        s: [1.0, 1.0],
        q: [1.0, 1.0],
    }
}

#[test]
fn affine_model_has_zero_ratio() {
    let spec = ModelSpec::Expr {
        f: "x + 2".into(),
        domain: [0.5, 4.0],
    };
    let bx = ParamBox {
        s: [0.3, 1.0],
        ..unit_box()
    };
    let res = optimize_tightness(TheoremTag::Eq10, Some(&spec), &bx, &settings(), &SearchSettings::default()).unwrap();
    assert!(res.max_ratio < 1e-12, "{}", res.max_ratio);
    assert!(!res.violation_found);
}

// mpmath at 30 digits gives 0.455937730704942601279853982908 at (a, b) = (1, 2)
#[test]
fn exp_recip_fixture() {
    let spec = ModelSpec::ExpRecip {
        lambda: 0.5,
        domain: [1.0, 2.0],
    };
    let res = optimize_tightness(TheoremTag::Eq10, Some(&spec), &unit_box(), &settings(), &SearchSettings::default())
        .unwrap();
    assert_eq!((res.argmax.a, res.argmax.b), (1.0, 2.0));
    assert!((res.max_ratio - 0.455_937_730_704_942_26).abs() < 1e-12, "{}", res.max_ratio);
    assert!(res.max_ratio > 0.0 && res.max_ratio < 1.0);
    assert!(!res.violation_found);
}

#[test]
fn exp_model_has_no_feasible_point() {
    let spec = ModelSpec::Exp {
        lambda: 1.0,
        domain: [1.0, 2.0],
    };
    let err = optimize_tightness(TheoremTag::Eq10, Some(&spec), &unit_box(), &settings(), &SearchSettings::default())
        .unwrap_err();
    assert!(matches!(err, HarnessError::EmptyFeasibleSet(TheoremTag::Eq10)));
}

#[test]
fn box_without_a_below_b_is_empty() {
    let spec = ModelSpec::ExpRecip {
        lambda: 0.5,
        domain: [1.0, 4.0],
    };
    let bx = ParamBox {
        a: [3.0, 4.0],
        b: [1.0, 2.0],
        ..unit_box()
    };
    let err = optimize_tightness(TheoremTag::Eq10, Some(&spec), &bx, &settings(), &SearchSettings::default()).unwrap_err();
    assert!(matches!(err, HarnessError::EmptyFeasibleSet(_)));
}

#[test]
fn propositions_have_no_feasible_point_below_one() {
    let bx = ParamBox {
        a: [0.1, 0.5],
        b: [0.6, 1.0],
        s: [0.3, 0.9],
        q: [1.0, 1.0],
    };
    let err = optimize_tightness(TheoremTag::Prop41, None, &bx, &settings(), &SearchSettings::default()).unwrap_err();
    assert!(matches!(err, HarnessError::EmptyFeasibleSet(TheoremTag::Prop41)));
}

#[test]
fn classical_bound_ratio_stays_below_one() {
    let spec = ModelSpec::Expr {
        f: "x^2".into(),
        domain: [0.5, 4.0],
    };
    let bx = ParamBox {
        a: [0.5, 2.0],
        b: [2.5, 4.0],
        q: [1.2, 4.0],
        ..unit_box()
    };
    let res = optimize_tightness(TheoremTag::Eq9, Some(&spec), &bx, &settings(), &SearchSettings::default()).unwrap();
    assert!(res.max_ratio > 0.0 && res.max_ratio <= 1.0 + 1e-9);
    assert!(res.argmax.q.is_some() && res.argmax.s.is_none());
}

#[test]
fn rejects_inverted_box() {
    let spec = ModelSpec::Exp {
        lambda: 1.0,
        domain: [1.0, 2.0],
    };
    let bx = ParamBox {
        s: [1.0, 0.5],
        ..unit_box()
    };
    let err = optimize_tightness(TheoremTag::Eq10, Some(&spec), &bx, &settings(), &SearchSettings::default()).unwrap_err();
    assert!(err.to_string().contains("box.s"));
}
