use std::f64::consts::FRAC_PI_4;

use num_rational::BigRational;
use proptest::prelude::*;

use seiffert_core::bernoulli::cot_coefficient_magnitude;
use seiffert_core::oracle::Oracle;
use seiffert_core::series::{ratio_series_r, SeriesKind, TruncatedSeries, DEFAULT_ORDER};

#[test]
fn csc2_coefficients_are_derivatives_of_cot() {
    for n in 1..=40 {
        let csc = SeriesKind::Csc2.coefficient(n).unwrap();
        let magnitude = cot_coefficient_magnitude(n).unwrap();
        assert_eq!(csc, magnitude * BigRational::from_integer((2 * n as i64 - 1).into()));
    }
}

#[test]
fn ratio_series_decreases_on_a_grid() {
    let n = 100_000;
    let values: Vec<f64> = (1..n)
        .map(|i| ratio_series_r(FRAC_PI_4 * i as f64 / n as f64, DEFAULT_ORDER).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn default_order_tail_is_negligible() {
    let s = TruncatedSeries::with_radius(SeriesKind::Ratio, DEFAULT_ORDER, FRAC_PI_4).unwrap();
    assert!(s.tail_bound() < 1e-16, "{}", s.tail_bound());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truncation_error_respects_tail_bound(order in 2usize..=20, frac in 0.05f64..1.0) {
        let o = Oracle::new(40);
        for kind in [SeriesKind::Cot, SeriesKind::Csc2, SeriesKind::Ratio] {
            let s = TruncatedSeries::new(kind, order).unwrap();
            let x = s.radius() * frac;
            let exact = match kind {
                SeriesKind::Cot => o.cot(x).unwrap(),
                SeriesKind::Csc2 => o.csc2(x).unwrap(),
                SeriesKind::Ratio => o.ratio_theta(x).unwrap(),
            };
            let err = exact.distance_to(s.eval(x));
            // rounding of the partial sum itself sits on top of the bound
            let rounding = 1e-14 * exact.to_f64().abs().max(1.0);
            prop_assert!(err <= s.tail_bound() + rounding, "{:?} N={} x={}: {} > {}", kind, order, x, err, s.tail_bound());
        }
    }

    #[test]
    fn ratio_series_matches_theta_form(theta in 1e-3f64..FRAC_PI_4) {
        let o = Oracle::new(40);
        let want = o.ratio_theta(theta).unwrap().to_f64();
        prop_assert!((ratio_series_r(theta, DEFAULT_ORDER).unwrap() - want).abs() < 1e-15);
    }
}
