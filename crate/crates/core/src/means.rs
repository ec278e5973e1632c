//! Bivariate means of two positive numbers.
//!
//! Every mean is extended to the diagonal `a = b` by continuity (value `a`).
//! The quadratic means are written as the arithmetic mean plus a
//! nonnegative correction in `(a - b)^2`, which keeps the ordering
//! `A < C̄ < S < C` visible in floating point for nearby arguments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Below this relative difference the Seiffert mean switches to a series.
pub const SEIFFERT_SERIES_THRESHOLD: f64 = 1e-4;

/// Default relative tolerance for comparing means.
pub const DEFAULT_RTOL: f64 = 1e-12;

/// Two strictly positive finite reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return domain(format!("arguments must be finite, got ({a}, {b})"));
        }
        if a <= 0.0 || b <= 0.0 {
            return domain(format!("arguments must be positive, got ({a}, {b})"));
        }
        Ok(PositivePair { a, b })
    }

    /// The pair `(x, 1)` used when a mean is studied through the ratio `x = a/b`.
    pub fn from_ratio(x: f64) -> Result<Self> {
        Self::new(x, 1.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        PositivePair { a: self.b, b: self.a }
    }

    pub fn min(&self) -> f64 {
        self.a.min(self.b)
    }

    pub fn max(&self) -> f64 {
        self.a.max(self.b)
    }

    pub fn sum(&self) -> f64 {
        self.a + self.b
    }

    /// `(a - b) / (a + b)`, in `(-1, 1)`.
    pub fn relative_difference(&self) -> f64 {
        (self.a - self.b) / (self.a + self.b)
    }
}

/// The classical means appearing in the comparison chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeanKind {
    Seiffert,
    Arithmetic,
    Geometric,
    RootSquare,
    ContraHarmonic,
    Centroidal,
    Power(f64),
}

impl MeanKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            MeanKind::Power(p) if !p.is_finite() => domain(format!("power exponent must be finite, got {p}")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Seiffert => f.write_str("seiffert"),
            MeanKind::Arithmetic => f.write_str("arithmetic"),
            MeanKind::Geometric => f.write_str("geometric"),
            MeanKind::RootSquare => f.write_str("root-square"),
            MeanKind::ContraHarmonic => f.write_str("contra-harmonic"),
            MeanKind::Centroidal => f.write_str("centroidal"),
            MeanKind::Power(p) => write!(f, "power({p})"),
        }
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    /// Parses the names printed by `Display`; `power` needs the `power(p)` form.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let kind = match lower.as_str() {
            "seiffert" | "t" => MeanKind::Seiffert,
            "arithmetic" | "a" => MeanKind::Arithmetic,
            "geometric" | "g" => MeanKind::Geometric,
            "root-square" | "rootsquare" | "s" => MeanKind::RootSquare,
            "contra-harmonic" | "contraharmonic" | "c" => MeanKind::ContraHarmonic,
            "centroidal" => MeanKind::Centroidal,
            other => {
                let inner = other
                    .strip_prefix("power(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Domain(format!("unknown mean kind '{s}'")))?;
                let p: f64 = inner
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad power exponent '{inner}'")))?;
                MeanKind::Power(p)
            }
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// `t / atan(t)`, with a truncated reciprocal series near zero.
fn t_over_atan(t: f64) -> f64 {
    if t.abs() < SEIFFERT_SERIES_THRESHOLD {
        let u = t * t;
        // atan(t)/t = 1 - t^2/3 + t^4/5 - t^6/7 + t^8/9 - ...
        let ratio = 1.0 - u * (1.0 / 3.0 - u * (1.0 / 5.0 - u * (1.0 / 7.0 - u / 9.0)));
        1.0 / ratio
    } else {
        t / t.atan()
    }
}

/// Seiffert mean `(a - b) / (2 atan((a - b)/(a + b)))`.
pub fn seiffert_t(pair: PositivePair) -> f64 {
    if pair.a == pair.b {
        return pair.a;
    }
    arithmetic(pair) * t_over_atan(pair.relative_difference())
}

pub fn arithmetic(pair: PositivePair) -> f64 {
    pair.a / 2.0 + pair.b / 2.0
}

pub fn geometric(pair: PositivePair) -> f64 {
    pair.a.sqrt() * pair.b.sqrt()
}

pub fn root_square(pair: PositivePair) -> f64 {
    pair.a.hypot(pair.b) * std::f64::consts::FRAC_1_SQRT_2
}

/// `(a^2 + b^2) / (a + b) = A + (a - b)^2 / (2 (a + b))`.
pub fn contra_harmonic(pair: PositivePair) -> f64 {
    let d = pair.a - pair.b;
    let s = pair.sum();
    arithmetic(pair) + d * (d / s) / 2.0
}

/// Centroidal mean from the sum and difference of its arguments.
fn centroidal_sum_diff(sum: f64, diff: f64) -> f64 {
    // 2(u^2 + uv + v^2) / (3(u + v)) = (u + v)/2 + (u - v)^2 / (6(u + v))
    sum / 2.0 + diff * (diff / sum) / 6.0
}

/// `2(a^2 + ab + b^2) / (3(a + b))`.
pub fn centroidal_c(pair: PositivePair) -> f64 {
    centroidal_sum_diff(pair.sum(), pair.a - pair.b)
}

/// Power mean `((a^p + b^p)/2)^{1/p}`, geometric at `p = 0`.
pub fn power_mean(p: f64, pair: PositivePair) -> Result<f64> {
    MeanKind::Power(p).validate()?;
    if p == 0.0 {
        return Ok(geometric(pair));
    }
    if pair.a == pair.b {
        return Ok(pair.a);
    }
    // factor out the argument that keeps r^p <= 1
    let (anchor, other) = if p > 0.0 {
        (pair.max(), pair.min())
    } else {
        (pair.min(), pair.max())
    };
    let r = other / anchor;
    let inner = (1.0 + r.powf(p)) / 2.0;
    Ok(anchor * inner.powf(1.0 / p))
}

/// Any of the classical means.
pub fn classical_mean(kind: MeanKind, pair: PositivePair) -> Result<f64> {
    kind.validate()?;
    Ok(match kind {
        MeanKind::Seiffert => seiffert_t(pair),
        MeanKind::Arithmetic => arithmetic(pair),
        MeanKind::Geometric => geometric(pair),
        MeanKind::RootSquare => root_square(pair),
        MeanKind::ContraHarmonic => contra_harmonic(pair),
        MeanKind::Centroidal => centroidal_c(pair),
        MeanKind::Power(p) => power_mean(p, pair)?,
    })
}

fn check_blend_weight(x: f64) -> Result<()> {
    if !(0.5..=1.0).contains(&x) {
        return domain(format!("blend weight must lie in [1/2, 1], got {x}"));
    }
    Ok(())
}

/// `J(x) = C̄(x a + (1 - x) b, x b + (1 - x) a)` for `x` in `[1/2, 1]`.
pub fn blend_mean_j(x: f64, pair: PositivePair) -> Result<f64> {
    check_blend_weight(x)?;
    // the blended pair keeps the sum a + b; its difference is (2x - 1)(a - b)
    Ok(centroidal_sum_diff(pair.sum(), (2.0 * x - 1.0) * (pair.a - pair.b)))
}

/// Centroidal mean of the blended pair for any weight keeping both arguments positive.
pub fn centroidal_blend(x: f64, pair: PositivePair) -> Result<f64> {
    check_blended_positive(x, pair)?;
    Ok(centroidal_sum_diff(pair.sum(), (2.0 * x - 1.0) * (pair.a - pair.b)))
}

fn check_blended_positive(x: f64, pair: PositivePair) -> Result<()> {
    let u = x * pair.a + (1.0 - x) * pair.b;
    let v = x * pair.b + (1.0 - x) * pair.a;
    if !(x.is_finite() && u > 0.0 && v > 0.0) {
        return domain(format!("blend weight {x} leaves the positive quadrant"));
    }
    Ok(())
}

/// Contra-harmonic mean of the blended pair `(x a + (1 - x) b, x b + (1 - x) a)`.
///
/// Unlike [`blend_mean_j`] any real weight is accepted as long as the blended
/// arguments stay positive.
pub fn contra_harmonic_blend(x: f64, pair: PositivePair) -> Result<f64> {
    check_blended_positive(x, pair)?;
    let d = (2.0 * x - 1.0) * (pair.a - pair.b);
    let s = pair.sum();
    Ok(s / 2.0 + d * (d / s) / 2.0)
}

/// Whether two values agree to a relative tolerance.
pub fn rel_close(x: f64, y: f64, rtol: f64) -> bool {
    (x - y).abs() <= rtol * x.abs().max(y.abs())
}
