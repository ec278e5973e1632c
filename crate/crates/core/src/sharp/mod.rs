//! Best-possible constants of the two double inequalities for the Seiffert mean.
//!
//! Constants are recovered independently of their closed forms: `λ` as the
//! root in `p` of the limit `π - 3/(p² - p + 1)` of the auxiliary function,
//! `α₁` and `β₁` as the extremes of the ratio `(T - A)/(C - A)`, and `μ` from
//! the supremum of that ratio through `(2μ - 1)²/3 = sup R`.

pub mod bounds;
pub mod ratio;
pub mod sweep;

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::means::PositivePair;
use crate::proof::{counterexample_witness, limit_at_infinity, WitnessSide};
use crate::roots::bisect;

pub use bounds::{Bound, Family, Side};
pub use ratio::{ratio_deficit, ratio_ta_ca};
pub use sweep::{
    ordering_chain_verify, prior_bounds_regression, scan_ratio_endpoints, scan_ratio_grid,
    theorem_1_1_verify, theorem_1_2_verify, BoundStats, RatioScan, SuiteReport, SweepConfig,
    Witness,
};

/// `λ = (1 + √(12/π - 3)) / 2`.
pub fn lambda_closed() -> f64 {
    0.5 * (1.0 + (12.0 / PI - 3.0).sqrt())
}

/// Upper blend constant of the centroidal bound.
pub fn mu_closed() -> f64 {
    1.0
}

/// `α₁ = 4/π - 1`.
pub fn thm2_alpha_closed() -> f64 {
    4.0 / PI - 1.0
}

/// `β₁ = 1/3`.
pub fn thm2_beta_closed() -> f64 {
    1.0 / 3.0
}

/// `(4 - π) / ((√2 - 1) π)`, lower constant of the `S`/`A` combination.
pub fn alpha_sa_closed() -> f64 {
    (4.0 - PI) / ((SQRT_2 - 1.0) * PI)
}

/// `2/3`, upper constant of the `S`/`A` combination.
pub fn beta_sa_closed() -> f64 {
    2.0 / 3.0
}

/// `(1 + √(4/π - 1)) / 2`, lower constant of the contra-harmonic blend.
pub fn alpha_c_closed() -> f64 {
    0.5 * (1.0 + (4.0 / PI - 1.0).sqrt())
}

/// `(3 + √3) / 6`, upper constant of the contra-harmonic blend.
pub fn beta_c_closed() -> f64 {
    (3.0 + 3f64.sqrt()) / 6.0
}

/// Root of `π - 3/(p² - p + 1)` on `(1/2, 1)` by bisection to width `1e-15`.
pub fn lambda_numeric() -> Result<f64> {
    let bracket = bisect(limit_at_infinity, 0.5, 1.0, 1e-15)?;
    Ok(bracket.midpoint())
}

/// A sampled pair at which a bound with a perturbed constant fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessWitness {
    /// Ratio `a/b` with `b = 1`.
    pub ratio: f64,
    /// Amount by which the constant was moved past its optimum.
    pub margin: f64,
    /// Normalized slack of the perturbed bound at `ratio` (negative).
    pub slack: f64,
}

/// A recovered constant next to its closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpConstantReport {
    pub name: String,
    pub closed_form: f64,
    pub discovered: f64,
    pub abs_gap: f64,
    pub witness: Option<SharpnessWitness>,
}

impl SharpConstantReport {
    fn new(name: &str, closed_form: f64, discovered: f64, witness: Option<SharpnessWitness>) -> Self {
        SharpConstantReport {
            name: name.to_string(),
            closed_form,
            discovered,
            abs_gap: (closed_form - discovered).abs(),
            witness,
        }
    }
}

/// Scans ratios log-spaced over `(1, 1e12]` for the first one where `bound`,
/// moved past its optimum by `margin`, fails.
pub fn sharpness_witness(bound: &Bound, margin: f64) -> Result<SharpnessWitness> {
    let grid = crate::roots::log_grid_above_one(1e-9, 1e12, 4000);
    grid.iter()
        .find_map(|&x| {
            let slack = bound.slack(ratio::t_from_ratio(x), margin);
            (slack < 0.0).then_some(SharpnessWitness {
                ratio: x,
                margin,
                slack,
            })
        })
        .ok_or_else(|| Error::NoWitness(format!("{} stays valid after a shift of {margin}", bound.name)))
}

/// Margins used for the witnesses attached to each constant.
pub const THM1_MARGIN: f64 = 1e-4;
pub const THM2_MARGIN: f64 = 1e-6;

/// Recovers `λ`, `μ`, `α₁` and `β₁` numerically.
///
/// `scan_points` sets the size of the endpoint-clustered scan of `R(t)`.
pub fn discover_constants(scan_points: usize) -> Result<Vec<SharpConstantReport>> {
    let scan = scan_ratio_endpoints(13, scan_points.max(4))?;

    let lambda = lambda_numeric()?;
    let lambda_witness = counterexample_witness(lambda_closed() + THM1_MARGIN, WitnessSide::AboveLambda)?;
    let lambda_witness = SharpnessWitness {
        ratio: lambda_witness.t,
        margin: THM1_MARGIN,
        slack: bounds::thm1_lower().slack(ratio::t_from_ratio(lambda_witness.t), THM1_MARGIN),
    };

    let mu = 0.5 * (1.0 + (3.0 * scan.supremum).sqrt());
    let mu_witness = counterexample_witness(1.0 - THM1_MARGIN, WitnessSide::BelowOne)?;
    let mu_witness = SharpnessWitness {
        ratio: mu_witness.t,
        margin: THM1_MARGIN,
        slack: bounds::thm1_upper().slack(ratio::t_from_ratio(mu_witness.t), THM1_MARGIN),
    };

    Ok(vec![
        SharpConstantReport::new("lambda", lambda_closed(), lambda, Some(lambda_witness)),
        SharpConstantReport::new("mu", mu_closed(), mu, Some(mu_witness)),
        SharpConstantReport::new(
            "alpha1",
            thm2_alpha_closed(),
            scan.infimum,
            Some(sharpness_witness(&bounds::thm2_lower(), THM2_MARGIN)?),
        ),
        SharpConstantReport::new(
            "beta1",
            thm2_beta_closed(),
            scan.supremum,
            Some(sharpness_witness(&bounds::thm2_upper(), THM2_MARGIN)?),
        ),
    ])
}

/// `C̄(λ-blend) / T` at the ratio `x`; tends to one as `x → ∞`.
pub fn lambda_blend_over_seiffert(x: f64) -> Result<f64> {
    let pair = PositivePair::from_ratio(x)?;
    Ok(crate::means::blend_mean_j(lambda_closed(), pair)? / crate::means::seiffert_t(pair))
}
