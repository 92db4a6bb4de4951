use hadamard_core::means::propositions::{
    identity_aa_check, identity_bb_check, identity_cc_check, identity_dd_check, identity_ee_check,
    prop_lhs, Consistency,
};
use hadamard_core::means::{mean_a, mean_l, mean_lp};
use hadamard_core::{FunctionModel, Interval};
use proptest::prelude::*;

proptest! {
    #[test]
    fn mean_ordering(a in 1e-3f64..1e3, ratio in 1.001f64..100.0) {
        let b = a * ratio;
        let l = mean_l(a, b).unwrap();
        let m = mean_a(a, b).unwrap();
        prop_assert!(a < l + 1e-12 * b);
        prop_assert!(l < m + 1e-12 * b);
        prop_assert!(m < b + 1e-12 * b);
    }

    #[test]
    fn l1_is_arithmetic(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let l1 = mean_lp(a, b, 1.0).unwrap();
        let m = mean_a(a, b).unwrap();
        prop_assert!((l1 - m).abs() <= 1e-12 * m);
    }

    #[test]
    fn means_are_symmetric(a in 1e-3f64..1e3, b in 1e-3f64..1e3, p in 0.1f64..3.0) {
        prop_assert!((mean_l(a, b).unwrap() - mean_l(b, a).unwrap()).abs() <= 1e-12 * a.max(b));
        prop_assert!((mean_lp(a, b, p).unwrap() - mean_lp(b, a, p).unwrap()).abs() <= 1e-12 * a.max(b));
    }
}

#[test]
fn lp_is_continuous_in_p() {
    // a jump would show up as a second difference far above the smooth O(h²) level
    let h = 1e-4;
    for (a, b) in [(0.1, 0.9), (1.0, 4.0), (0.5, 0.55), (2.0, 200.0)] {
        let n = ((3.0 - 0.1) / h) as usize;
        let values: Vec<f64> = (0..=n).map(|i| mean_lp(a, b, 0.1 + i as f64 * h).unwrap()).collect();
        for (i, w) in values.windows(3).enumerate() {
            let second = (w[2] - 2.0 * w[1] + w[0]).abs();
            assert!(second <= 1e-8 * b, "jump near p = {} for ({a}, {b})", 0.1 + (i + 1) as f64 * h);
            assert!(w[1] >= a && w[1] <= b);
        }
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn exact_identities_hold_across_sweep() {
    let ab = grid(0.05, 1.0, 10);
    let domain = Interval::new(0.01, 1.0).unwrap();
    for &s in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        let model = FunctionModel::power(s, domain).unwrap();
        for &a in &ab {
            for &b in ab.iter().filter(|&&b| b > a) {
                let aa = identity_aa_check(&model, a, b, 1e-10).unwrap();
                assert!(aa.residual <= 1e-10, "aa at ({a}, {b}, {s}): {aa:?}");
                for &q in &[1.0, 1.5, 2.0] {
                    let cc = identity_cc_check(a, b, s, q, 1e-10).unwrap();
                    assert_eq!(cc.status, Consistency::Consistent, "cc at ({a},{b},{s},{q}): {cc:?}");
                    let dd = identity_dd_check(a, b, s, q, 1e-10).unwrap();
                    assert!(dd.relative <= 1e-10, "dd at ({a},{b},{s},{q}): {dd:?}");
                    // these are measured, not required to agree
                    let ee = identity_ee_check(a, b, s, q, 1e-10).unwrap();
                    assert!(ee.residual.is_finite());
                }
                let bb = identity_bb_check(a, b, s, 1e-8).unwrap();
                assert!(bb.residual.is_finite());
            }
        }
    }
}

#[test]
fn proposition_lhs_vanishes_on_the_diagonal() {
    for s in [0.2, 0.5, 0.8] {
        assert_eq!(prop_lhs(0.3, 0.3, s).unwrap(), 0.0);
        assert!(prop_lhs(0.3, 0.3 + 1e-9, s).unwrap() < 1e-15);
    }
    // s -> 1 boundary: A(a, b) - L_1(a, b) = 0
    let near_one = prop_lhs(0.2, 0.9, 1.0 - 1e-9).unwrap();
    assert!(near_one < 1e-9);
}
