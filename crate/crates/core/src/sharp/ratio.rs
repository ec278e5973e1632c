//! The normalized Seiffert excess `(T - A) / (C - A)` and its reparametrizations.
//!
//! With `t = (a - b)/(a + b)` every mean in the comparison chain is
//! `A (1 + t^2 g)` for a gap function `g`: `g = 1/3` for the centroidal
//! mean, `g = 1` for the contra-harmonic mean and
//! `g = R(t) = (t / atan t - 1) / t^2` for the Seiffert mean. `R` is the
//! quantity both double inequalities bound.

use std::f64::consts::FRAC_PI_4;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{domain, Result};
use crate::means::{arithmetic, contra_harmonic, seiffert_t, PositivePair};

/// Below this `|t|` the ratio is summed from its power series in `t^2`.
pub const RATIO_SERIES_THRESHOLD: f64 = 0.5;

const SERIES_TERMS: usize = 48;

/// Exact coefficients `c_k` of `t / atan t = sum c_k t^{2k}`, by long division of
/// `atan(t)/t = sum (-1)^k t^{2k} / (2k + 1)`.
pub fn t_over_atan_coefficients(terms: usize) -> Vec<BigRational> {
    let divisor: Vec<BigRational> = (0..terms)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(2 * k + 1))
        })
        .collect();
    let mut quotient: Vec<BigRational> = Vec::with_capacity(terms);
    for k in 0..terms {
        // sum_{j<=k} q_j d_{k-j} = [k == 0]
        let mut acc = if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        for j in 0..k {
            acc -= &quotient[j] * &divisor[k - j];
        }
        quotient.push(acc / &divisor[0]);
    }
    quotient
}

/// Exact coefficients of `R(t) = sum r_k t^{2k}`: the division quotient shifted by one.
pub fn ratio_t_coefficients(terms: usize) -> Vec<BigRational> {
    t_over_atan_coefficients(terms + 1).into_iter().skip(1).collect()
}

static RATIO_COEFFS: Lazy<Vec<f64>> = Lazy::new(|| {
    ratio_t_coefficients(SERIES_TERMS)
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
});

fn series_tail(u: f64) -> f64 {
    // sum_{k>=1} r_k u^k, i.e. R(t) - 1/3
    let c = &RATIO_COEFFS[1..];
    u * c.iter().rev().fold(0.0, |acc, &r| acc * u + r)
}

/// `R(t)` for `|t| <= 1` without domain checks.
pub(crate) fn ratio_unchecked(t: f64) -> f64 {
    let t = t.abs();
    if t < RATIO_SERIES_THRESHOLD {
        RATIO_COEFFS[0] + series_tail(t * t)
    } else {
        (t / t.atan() - 1.0) / (t * t)
    }
}

/// `1/3 - R(t)`, accurate in relative terms as `t -> 0`.
pub(crate) fn deficit_unchecked(t: f64) -> f64 {
    let t = t.abs();
    if t < RATIO_SERIES_THRESHOLD {
        -series_tail(t * t)
    } else {
        1.0 / 3.0 - ratio_unchecked(t)
    }
}

/// `4/pi - 1`, the value of `R` at `t = 1`.
pub fn lower_limit() -> f64 {
    1.0 / FRAC_PI_4 - 1.0
}

/// `(t / atan t - 1) / t^2` for `0 < t < 1`.
pub fn ratio_ta_ca(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("ratio_ta_ca needs 0 < t < 1, got {t}"));
    }
    Ok(ratio_unchecked(t))
}

/// `1/3 - (t / atan t - 1) / t^2` for `0 < t < 1`.
pub fn ratio_deficit(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("ratio_deficit needs 0 < t < 1, got {t}"));
    }
    Ok(deficit_unchecked(t))
}

/// `t = (x - 1)/(x + 1)` for a ratio `x = a/b > 1`.
pub fn t_from_ratio(x: f64) -> f64 {
    (x - 1.0) / (x + 1.0)
}

/// Inverse of [`t_from_ratio`].
pub fn ratio_from_t(t: f64) -> f64 {
    (1.0 + t) / (1.0 - t)
}

/// `(T - A)/(C - A)` from directly evaluated means; unstable near the diagonal.
pub fn raw_mean_ratio(pair: PositivePair) -> Result<f64> {
    if pair.a() == pair.b() {
        return domain("raw mean ratio is 0/0 on the diagonal");
    }
    let a = arithmetic(pair);
    Ok((seiffert_t(pair) - a) / (contra_harmonic(pair) - a))
}

/// `cot(theta)/theta - 1/sin^2(theta) + 1`, evaluated with library trig calls.
pub fn theta_form(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= FRAC_PI_4) {
        return domain(format!("theta form needs 0 < theta <= pi/4, got {theta}"));
    }
    let (s, c) = theta.sin_cos();
    Ok(c / s / theta - 1.0 / (s * s) + 1.0)
}
