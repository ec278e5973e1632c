use proptest::prelude::*;

use seiffert_core::sharp::bounds::{prior_bounds, thm1_lower, thm1_upper, thm2_lower, thm2_upper};
use seiffert_core::sharp::ratio::lower_limit;
use seiffert_core::sharp::{
    lambda_blend_over_seiffert, lambda_closed, lambda_numeric, ordering_chain_verify,
    prior_bounds_regression, ratio_ta_ca, scan_ratio_grid, sharpness_witness, SweepConfig,
};

#[test]
fn sharp_in_both_directions() {
    for bound in [thm1_lower(), thm1_upper(), thm2_lower(), thm2_upper()] {
        for eps in [1e-3, 1e-4, 1e-5] {
            let w = sharpness_witness(&bound, eps).unwrap();
            assert!(w.slack < 0.0, "{} eps={eps}", bound.name);
            assert!(sharpness_witness(&bound, -eps).is_err(), "{} eps=-{eps}", bound.name);
        }
    }
}

#[test]
fn sweeps_agree_with_witness_search() {
    let base = SweepConfig::with_samples(50_000);
    for eps in [1e-3, 1e-4, 1e-5] {
        for (shift, expect_violation) in [(eps, true), (-eps, false)] {
            let cfg = SweepConfig {
                lower_shift: shift,
                upper_shift: shift,
                ..base
            };
            for report in [
                seiffert_core::sharp::theorem_1_1_verify(&cfg).unwrap(),
                seiffert_core::sharp::theorem_1_2_verify(&cfg).unwrap(),
            ] {
                for b in &report.bounds {
                    assert_eq!(b.violations > 0, expect_violation, "{} shift {shift}", b.name);
                    assert_eq!(b.witness.is_some(), expect_violation);
                }
            }
        }
    }
}

#[test]
fn prior_bounds_and_chain_hold() {
    let cfg = SweepConfig::with_samples(100_000);
    let priors = prior_bounds_regression(&cfg).unwrap();
    assert!(priors.pass, "{priors:?}");
    assert_eq!(priors.bounds.len(), prior_bounds().len());
    assert!(ordering_chain_verify(&cfg).unwrap().pass);
}

#[test]
fn lambda_consistency() {
    assert!((lambda_numeric().unwrap() - lambda_closed()).abs() <= 1e-12);
    assert!((lambda_blend_over_seiffert(1e10).unwrap() - 1.0).abs() <= 1e-8);
}

#[test]
fn ratio_monotone_on_dense_grid() {
    let scan = scan_ratio_grid(1e-9, 1.0 - 1e-9, 2_000_000).unwrap();
    assert!(scan.strictly_decreasing);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5000))]

    #[test]
    fn ratio_stays_in_open_range(t in 0.0f64..1.0) {
        prop_assume!(t > 0.0);
        let r = ratio_ta_ca(t).unwrap();
        prop_assert!(lower_limit() < r && r < 1.0 / 3.0, "t = {}: {}", t, r);
    }
}
