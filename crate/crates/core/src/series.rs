//! Truncated Bernoulli-coefficient expansions of `cot x`, `1/sin^2 x` and the
//! ratio `cot(theta)/theta - 1/sin^2(theta) + 1`.
//!
//! All three share the magnitude `a_n = 2^{2n} |B_{2n}| / (2n)!`:
//!
//! ```text
//! cot x       = 1/x   - sum a_n x^{2n-1}
//! 1/sin^2 x   = 1/x^2 + sum (2n-1) a_n x^{2n-2}
//! R(theta)    = 1     - sum 2n a_n theta^{2n-2}
//! ```
//!
//! Since `a_n = 2 zeta(2n) / pi^{2n} < 2 zeta(2) / pi^{2n}`, the remainder after
//! `N` terms on `|x| <= r < pi` is dominated by a geometric-type series in
//! `rho = (r/pi)^2`; that bound is what [`TruncatedSeries::tail_bound`] stores.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::bernoulli::{cot_coefficient_magnitude, N_MAX};
use crate::error::{domain, Error, Result};

/// Default truncation order used by consumers of the series.
pub const DEFAULT_ORDER: usize = 40;

const ZETA_2: f64 = PI * PI / 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// `cot x - 1/x`, coefficients of `x^{2n-1}`.
    Cot,
    /// `1/sin^2 x - 1/x^2`, coefficients of `x^{2n-2}`.
    Csc2,
    /// `R(theta) - 1`, coefficients of `theta^{2n-2}`.
    Ratio,
}

impl SeriesKind {
    /// Radius of the interval on which the stored tail bound is certified.
    pub fn default_radius(self) -> f64 {
        match self {
            SeriesKind::Cot | SeriesKind::Csc2 => FRAC_PI_2,
            SeriesKind::Ratio => FRAC_PI_4,
        }
    }

    /// Exact signed coefficient of the `n`-th term (`n >= 1`).
    pub fn coefficient(self, n: usize) -> Result<BigRational> {
        let a = cot_coefficient_magnitude(n)?;
        let k = BigRational::from_integer(n.into());
        Ok(match self {
            SeriesKind::Cot => -a,
            SeriesKind::Csc2 => a * (k * BigRational::from_integer(2.into()) - BigRational::from_integer(1.into())),
            SeriesKind::Ratio => -(a * k * BigRational::from_integer(2.into())),
        })
    }
}

/// A partial sum of one of the expansions, with exact and rounded coefficients.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    kind: SeriesKind,
    exact: Vec<BigRational>,
    coefficients: Vec<f64>,
    radius: f64,
    tail_bound: f64,
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > N_MAX {
        return Err(Error::Range(format!("series order must lie in 1..={N_MAX}, got {order}")));
    }
    Ok(())
}

impl TruncatedSeries {
    pub fn new(kind: SeriesKind, order: usize) -> Result<Self> {
        Self::with_radius(kind, order, kind.default_radius())
    }

    /// Builds the partial sum of `order` terms, certifying the tail on `|x| <= radius`.
    pub fn with_radius(kind: SeriesKind, order: usize, radius: f64) -> Result<Self> {
        check_order(order)?;
        if !(radius > 0.0 && radius < PI) {
            return domain(format!("tail radius must lie in (0, pi), got {radius}"));
        }
        let exact = (1..=order)
            .map(|n| kind.coefficient(n))
            .collect::<Result<Vec<_>>>()?;
        let coefficients = exact.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        Ok(TruncatedSeries {
            kind,
            exact,
            coefficients,
            radius,
            tail_bound: tail_bound(kind, order, radius),
        })
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.exact.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Upper bound on the absolute truncation remainder for `|x| <= radius`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Exact coefficients, term `n = 1` first.
    pub fn exact_coefficients(&self) -> &[BigRational] {
        &self.exact
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Evaluates the full truncated expansion, leading term included.
    pub fn eval(&self, x: f64) -> f64 {
        eval_rounded(self.kind, &self.coefficients, x)
    }
}

/// Rounded coefficients of every kind up to `N_MAX`, shared by the free functions.
static ROUNDED: Lazy<[Vec<f64>; 3]> = Lazy::new(|| {
    [SeriesKind::Cot, SeriesKind::Csc2, SeriesKind::Ratio].map(|kind| {
        (1..=N_MAX)
            .map(|n| kind.coefficient(n).map(|c| c.to_f64().unwrap_or(f64::NAN)).unwrap_or(f64::NAN))
            .collect()
    })
});

fn shared_eval(kind: SeriesKind, order: usize, x: f64) -> Result<f64> {
    check_order(order)?;
    let table = match kind {
        SeriesKind::Cot => &ROUNDED[0],
        SeriesKind::Csc2 => &ROUNDED[1],
        SeriesKind::Ratio => &ROUNDED[2],
    };
    Ok(eval_rounded(kind, &table[..order], x))
}

/// The singular leading term is carried in two parts so the sum stays within
/// about half an ulp when it dominates.
fn eval_rounded(kind: SeriesKind, coefficients: &[f64], x: f64) -> f64 {
    let x2 = x * x;
    let poly = coefficients.iter().rev().fold(0.0, |acc, &c| acc * x2 + c);
    match kind {
        SeriesKind::Cot => {
            let (q, e) = reciprocal_split(x);
            q + (e + poly * x)
        }
        SeriesKind::Csc2 => {
            let (q, e) = reciprocal_split(x);
            let hi = q * q;
            let lo = q.mul_add(q, -hi) + 2.0 * q * e;
            hi + (lo + poly)
        }
        SeriesKind::Ratio => 1.0 + poly,
    }
}

/// `1/x = q + e` with `q` the rounded quotient and `e` its correction.
fn reciprocal_split(x: f64) -> (f64, f64) {
    let q = 1.0 / x;
    (q, (-q).mul_add(x, 1.0) / x)
}

fn tail_bound(kind: SeriesKind, order: usize, radius: f64) -> f64 {
    let rho = (radius / PI).powi(2);
    let n1 = (order + 1) as f64;
    let lead = rho.powi(order as i32 + 1);
    let geometric = 1.0 / (1.0 - rho);
    match kind {
        // sum_{n>N} 2 zeta(2) rho^n / r
        SeriesKind::Cot => 2.0 * ZETA_2 / radius * lead * geometric,
        // sum_{n>N} (2n-1) 2 zeta(2) rho^n / r^2
        SeriesKind::Csc2 => {
            2.0 * ZETA_2 / (radius * radius)
                * lead
                * ((2.0 * n1 - 1.0) * geometric + 2.0 * rho * geometric * geometric)
        }
        // sum_{n>N} 2n 2 zeta(2) rho^n / r^2
        SeriesKind::Ratio => {
            4.0 * ZETA_2 / (radius * radius) * lead * (n1 * geometric + rho * geometric * geometric)
        }
    }
}

fn check_trig_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x == 0.0 || x.abs() >= PI {
        return domain(format!("series argument must satisfy 0 < |x| < pi, got {x}"));
    }
    Ok(())
}

/// `1/x - sum_{n=1}^{N} 2^{2n} |B_{2n}| / (2n)! x^{2n-1}`.
pub fn cot_series(x: f64, order: usize) -> Result<f64> {
    check_trig_arg(x)?;
    shared_eval(SeriesKind::Cot, order, x)
}

/// `1/x^2 + sum_{n=1}^{N} 2^{2n} (2n-1) |B_{2n}| / (2n)! x^{2n-2}`.
pub fn csc2_series(x: f64, order: usize) -> Result<f64> {
    check_trig_arg(x)?;
    shared_eval(SeriesKind::Csc2, order, x)
}

/// `1 - sum_{n=1}^{N} n 2^{2n+1} |B_{2n}| / (2n)! theta^{2n-2}` for `0 < theta <= pi/4`.
pub fn ratio_series_r(theta: f64, order: usize) -> Result<f64> {
    if !(theta > 0.0 && theta <= FRAC_PI_4) {
        return domain(format!("ratio series needs 0 < theta <= pi/4, got {theta}"));
    }
    shared_eval(SeriesKind::Ratio, order, theta)
}

/// Exact ratio-series coefficient `-(n 2^{2n+1} |B_{2n}| / (2n)!)`, written as printed.
pub fn ratio_coefficient_direct(n: usize) -> Result<BigRational> {
    let b = crate::bernoulli::bernoulli_even(n)?;
    let num = num_bigint::BigInt::from(n) << (2 * n + 1);
    let c = BigRational::new(num, crate::bernoulli::factorial(2 * n)) * num_traits::Signed::abs(&b);
    Ok(if c.is_zero() { c } else { -c })
}
