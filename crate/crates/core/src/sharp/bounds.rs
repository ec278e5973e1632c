//! One-sided bounds on the Seiffert mean and their slack in reduced form.
//!
//! Each bound compares `T(a, b)` with a mean `M_c(a, b)` depending on a
//! constant `c`. Writing both as `A + (C - A) g` turns the comparison into one
//! between gap functions of `t = (a - b)/(a + b)`; the slack reported here is
//! `(rhs - lhs) / (C - A)`, positive exactly when the bound holds. The
//! expansions around the sharp constant keep the slack resolvable in double
//! precision all the way to the boundary where it vanishes.

use serde::Serialize;

use crate::error::Result;
use crate::means::{
    arithmetic, centroidal_blend, contra_harmonic, contra_harmonic_blend, root_square, seiffert_t,
    PositivePair,
};

use super::ratio::{deficit_unchecked, lower_limit, ratio_unchecked};
use super::{
    alpha_c_closed, alpha_sa_closed, beta_c_closed, beta_sa_closed, lambda_closed, mu_closed,
    thm2_alpha_closed, thm2_beta_closed,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `M_c < T`; the constant is a supremum of admissible values.
    Lower,
    /// `T < M_c`; the constant is an infimum of admissible values.
    Upper,
}

/// Which mean family the bound draws `M_c` from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `C̄(c a + (1 - c) b, c b + (1 - c) a)`.
    CentroidalBlend,
    /// `c C + (1 - c) A`.
    ContraArithmetic,
    /// `c S + (1 - c) A`.
    RootSquareArithmetic,
    /// `C(c a + (1 - c) b, c b + (1 - c) a)`.
    ContraHarmonicBlend,
}

/// A one-sided bound with its sharp constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound {
    pub name: &'static str,
    pub family: Family,
    pub side: Side,
    /// Closed-form sharp constant.
    pub sharp: f64,
}

impl Bound {
    /// The constant actually tested for a tightening `shift`.
    ///
    /// A positive shift moves the constant past its optimum (up for lower
    /// bounds, down for upper bounds); a negative shift moves it inward.
    pub fn effective(&self, shift: f64) -> f64 {
        match self.side {
            Side::Lower => self.sharp + shift,
            Side::Upper => self.sharp - shift,
        }
    }

    /// Normalized slack at `0 < t < 1`; negative means the bound fails.
    pub fn slack(&self, t: f64, shift: f64) -> f64 {
        let d = shift;
        match (self.family, self.side) {
            (Family::CentroidalBlend, Side::Lower) => {
                // (2c - 1)^2 / 3 with 2 lambda - 1 squared equal to 12/pi - 3
                let base = 2.0 * lambda_closed() - 1.0;
                (ratio_unchecked(t) - lower_limit()) - 4.0 * d * (base + d) / 3.0
            }
            (Family::CentroidalBlend, Side::Upper) => deficit_unchecked(t) - 4.0 * d * (1.0 - d) / 3.0,
            (Family::ContraArithmetic, Side::Lower) => (ratio_unchecked(t) - lower_limit()) - d,
            (Family::ContraArithmetic, Side::Upper) => deficit_unchecked(t) - d,
            (Family::RootSquareArithmetic, Side::Lower) => {
                let w = 1.0 / (1.0 + (1.0 + t * t).sqrt());
                ratio_unchecked(t) - self.sharp * w - d * w
            }
            (Family::RootSquareArithmetic, Side::Upper) => {
                // (2/3) w - 1/3 = -t^2 w^2 / 3
                let w = 1.0 / (1.0 + (1.0 + t * t).sqrt());
                deficit_unchecked(t) - t * t * w * w / 3.0 - d * w
            }
            (Family::ContraHarmonicBlend, Side::Lower) => {
                let base = 2.0 * self.sharp - 1.0;
                (ratio_unchecked(t) - lower_limit()) - 4.0 * d * (base + d)
            }
            (Family::ContraHarmonicBlend, Side::Upper) => {
                // (2 beta_2 - 1)^2 = 1/3
                deficit_unchecked(t) - 4.0 * d * (FRAC_1_SQRT_3 - d)
            }
        }
    }

    /// The constant for which the bound is tight at `t`.
    pub fn implied_constant(&self, t: f64) -> f64 {
        let r = ratio_unchecked(t);
        match self.family {
            Family::CentroidalBlend => (1.0 + (3.0 * r).sqrt()) / 2.0,
            Family::ContraArithmetic => r,
            Family::RootSquareArithmetic => r * (1.0 + (1.0 + t * t).sqrt()),
            Family::ContraHarmonicBlend => (1.0 + r.sqrt()) / 2.0,
        }
    }

    /// The comparison mean `M_c(a, b)` evaluated directly.
    pub fn bound_mean(&self, pair: PositivePair, shift: f64) -> Result<f64> {
        let c = self.effective(shift);
        match self.family {
            Family::CentroidalBlend => centroidal_blend(c, pair),
            Family::ContraArithmetic => Ok(c * contra_harmonic(pair) + (1.0 - c) * arithmetic(pair)),
            Family::RootSquareArithmetic => Ok(c * root_square(pair) + (1.0 - c) * arithmetic(pair)),
            Family::ContraHarmonicBlend => contra_harmonic_blend(c, pair),
        }
    }

    /// `(lhs, rhs)` of the strict inequality `lhs < rhs`, from directly evaluated means.
    pub fn direct_sides(&self, pair: PositivePair, shift: f64) -> Result<(f64, f64)> {
        let m = self.bound_mean(pair, shift)?;
        let t = seiffert_t(pair);
        Ok(match self.side {
            Side::Lower => (m, t),
            Side::Upper => (t, m),
        })
    }
}

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// `C̄(λ-blend) < T`.
pub fn thm1_lower() -> Bound {
    Bound {
        name: "thm1.lower",
        family: Family::CentroidalBlend,
        side: Side::Lower,
        sharp: lambda_closed(),
    }
}

/// `T < C̄(1-blend) = C̄`.
pub fn thm1_upper() -> Bound {
    Bound {
        name: "thm1.upper",
        family: Family::CentroidalBlend,
        side: Side::Upper,
        sharp: mu_closed(),
    }
}

/// `α₁ C + (1 - α₁) A < T` with `α₁ = 4/π - 1`.
pub fn thm2_lower() -> Bound {
    Bound {
        name: "thm2.lower",
        family: Family::ContraArithmetic,
        side: Side::Lower,
        sharp: thm2_alpha_closed(),
    }
}

/// `T < β₁ C + (1 - β₁) A` with `β₁ = 1/3`.
pub fn thm2_upper() -> Bound {
    Bound {
        name: "thm2.upper",
        family: Family::ContraArithmetic,
        side: Side::Upper,
        sharp: thm2_beta_closed(),
    }
}

/// The four earlier bounds: root-square/arithmetic combinations and contra-harmonic blends.
pub fn prior_bounds() -> [Bound; 4] {
    [
        Bound {
            name: "priors.sa.lower",
            family: Family::RootSquareArithmetic,
            side: Side::Lower,
            sharp: alpha_sa_closed(),
        },
        Bound {
            name: "priors.sa.upper",
            family: Family::RootSquareArithmetic,
            side: Side::Upper,
            sharp: beta_sa_closed(),
        },
        Bound {
            name: "priors.c.lower",
            family: Family::ContraHarmonicBlend,
            side: Side::Lower,
            sharp: alpha_c_closed(),
        },
        Bound {
            name: "priors.c.upper",
            family: Family::ContraHarmonicBlend,
            side: Side::Upper,
            sharp: beta_c_closed(),
        },
    ]
}
