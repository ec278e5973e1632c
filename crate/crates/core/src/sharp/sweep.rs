//! Bulk verification of the bounds over sampled ratios `a/b`.
//!
//! Ratios are drawn log-uniformly from `(1, ratio_max)` with a seeded ChaCha8
//! stream per chunk of samples, then padded with deterministic boundary
//! points `1 + 10^-k` and `10^k`. Chunks are evaluated in parallel and
//! reduced with index tie-breaking, so a report depends only on the
//! configuration and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::means::{
    arithmetic, centroidal_c, contra_harmonic, geometric, root_square, seiffert_t, PositivePair,
};

use super::bounds::{prior_bounds, thm1_lower, thm1_upper, thm2_lower, thm2_upper, Bound, Side};
use super::ratio::{deficit_unchecked, ratio_unchecked, t_from_ratio};

const CHUNK: usize = 1 << 16;

/// Relative differences below this are not resolvable by the direct chain check.
const DIRECT_RESOLUTION: f64 = 1e-4;

/// Sampling and perturbation settings for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub ratio_max: f64,
    /// Tightening applied to lower-bound constants (positive = past the optimum).
    pub lower_shift: f64,
    /// Tightening applied to upper-bound constants (positive = past the optimum).
    pub upper_shift: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            samples: 1_000_000,
            seed: 0x05ef_fe27,
            ratio_max: 1e8,
            lower_shift: 0.0,
            upper_shift: 0.0,
        }
    }
}

impl SweepConfig {
    pub fn with_samples(samples: usize) -> Self {
        SweepConfig {
            samples,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return domain("samples must be at least 1");
        }
        if !(self.ratio_max > 1.0 && self.ratio_max.is_finite()) {
            return domain(format!("ratio_max must be a finite value above 1, got {}", self.ratio_max));
        }
        if !(self.lower_shift.is_finite() && self.upper_shift.is_finite()) {
            return domain("shifts must be finite");
        }
        Ok(())
    }

    fn shift_for(&self, side: Side) -> f64 {
        match side {
            Side::Lower => self.lower_shift,
            Side::Upper => self.upper_shift,
        }
    }
}

/// Deterministic near-diagonal and far-field ratios included in every sweep.
pub fn boundary_ratios(ratio_max: f64) -> Vec<f64> {
    let mut out: Vec<f64> = (1..=15).map(|k| 1.0 + 10f64.powi(-k)).collect();
    let mut k = 1;
    while 10f64.powi(k) < ratio_max {
        out.push(10f64.powi(k));
        k += 1;
    }
    out.push(ratio_max);
    out
}

/// `samples` log-uniform ratios in `(1, ratio_max)` followed by the boundary ratios.
pub fn sample_ratios(config: &SweepConfig) -> Vec<f64> {
    let log_max = config.ratio_max.ln();
    let chunks = config.samples.div_ceil(CHUNK);
    let mut out: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(chunk as u64);
            let len = CHUNK.min(config.samples - chunk * CHUNK);
            let mut local = Vec::with_capacity(len);
            while local.len() < len {
                let u: f64 = rng.random();
                let x = (u * log_max).exp();
                if x > 1.0 && x < config.ratio_max {
                    local.push(x);
                }
            }
            local
        })
        .collect();
    out.extend(boundary_ratios(config.ratio_max));
    out
}

/// A sampled argument at which a bound fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    /// The ratio `a/b` (with `b = 1`).
    pub ratio: f64,
    /// Normalized slack; negative.
    pub slack: f64,
    /// Side that should have been smaller.
    pub lhs: f64,
    /// Side that should have been larger.
    pub rhs: f64,
}

/// Extremal statistics of a single bound over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStats {
    pub name: String,
    pub side: Side,
    pub sharp: f64,
    /// Constant actually tested after the shift.
    pub tested: f64,
    pub min_slack: f64,
    pub min_slack_ratio: f64,
    /// Infimum (lower bounds) or supremum (upper bounds) of the implied constant.
    pub implied_extreme: f64,
    pub implied_extreme_ratio: f64,
    pub violations: usize,
    pub witness: Option<Witness>,
    /// Largest `|direct difference - reduced slack (C - A)| / A` seen.
    pub max_direct_discrepancy: f64,
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub n_samples: usize,
    pub min_slack_left: f64,
    pub min_slack_right: f64,
    pub witness: Option<Witness>,
    pub bounds: Vec<BoundStats>,
}

#[derive(Clone, Copy)]
struct Acc {
    min_slack: (f64, usize),
    implied: (f64, usize),
    violations: usize,
    max_disc: f64,
}

fn better_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn better_max(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn sweep_bound(bound: &Bound, ratios: &[f64], shift: f64) -> Result<BoundStats> {
    let lower = bound.side == Side::Lower;
    let identity = Acc {
        min_slack: (f64::INFINITY, usize::MAX),
        implied: (if lower { f64::INFINITY } else { f64::NEG_INFINITY }, usize::MAX),
        violations: 0,
        max_disc: 0.0,
    };
    let acc = ratios
        .par_iter()
        .enumerate()
        .map(|(i, &x)| -> Result<Acc> {
            let t = t_from_ratio(x);
            let slack = bound.slack(t, shift);
            let implied = bound.implied_constant(t);
            let pair = PositivePair::from_ratio(x)?;
            // weights beyond one leave the blended pair's domain at large ratios
            let disc = match bound.direct_sides(pair, shift) {
                Ok((lhs, rhs)) => {
                    let a = arithmetic(pair);
                    let spread = contra_harmonic(pair) - a;
                    ((rhs - lhs) - slack * spread).abs() / a
                }
                Err(_) => 0.0,
            };
            Ok(Acc {
                min_slack: (slack, i),
                implied: (implied, i),
                violations: usize::from(slack <= 0.0),
                max_disc: disc,
            })
        })
        .try_reduce(
            || identity,
            |l, r| {
                Ok(Acc {
                    min_slack: better_min(l.min_slack, r.min_slack),
                    implied: if lower {
                        better_min(l.implied, r.implied)
                    } else {
                        better_max(l.implied, r.implied)
                    },
                    violations: l.violations + r.violations,
                    max_disc: l.max_disc.max(r.max_disc),
                })
            },
        )?;
    let min_ratio = ratios[acc.min_slack.1];
    let witness = if acc.violations > 0 {
        let (lhs, rhs) = bound
            .direct_sides(PositivePair::from_ratio(min_ratio)?, shift)
            .unwrap_or((f64::NAN, f64::NAN));
        Some(Witness {
            ratio: min_ratio,
            slack: acc.min_slack.0,
            lhs,
            rhs,
        })
    } else {
        None
    };
    Ok(BoundStats {
        name: bound.name.to_string(),
        side: bound.side,
        sharp: bound.sharp,
        tested: bound.effective(shift),
        min_slack: acc.min_slack.0,
        min_slack_ratio: min_ratio,
        implied_extreme: acc.implied.0,
        implied_extreme_ratio: ratios[acc.implied.1],
        violations: acc.violations,
        witness,
        max_direct_discrepancy: acc.max_disc,
    })
}

fn suite_from_bounds(name: &str, bounds: &[Bound], config: &SweepConfig) -> Result<SuiteReport> {
    config.validate()?;
    let ratios = sample_ratios(config);
    let stats = bounds
        .iter()
        .map(|b| sweep_bound(b, &ratios, config.shift_for(b.side)))
        .collect::<Result<Vec<_>>>()?;
    let min_side = |side: Side| {
        stats
            .iter()
            .filter(|s| s.side == side)
            .map(|s| s.min_slack)
            .fold(f64::INFINITY, f64::min)
    };
    let witness = stats
        .iter()
        .filter_map(|s| s.witness)
        .min_by(|a, b| a.slack.total_cmp(&b.slack));
    Ok(SuiteReport {
        suite: name.to_string(),
        pass: stats.iter().all(|s| s.violations == 0),
        n_samples: ratios.len(),
        min_slack_left: min_side(Side::Lower),
        min_slack_right: min_side(Side::Upper),
        witness,
        bounds: stats,
    })
}

/// `C̄(λ-blend) < T < C̄` over sampled ratios.
pub fn theorem_1_1_verify(config: &SweepConfig) -> Result<SuiteReport> {
    suite_from_bounds("thm1", &[thm1_lower(), thm1_upper()], config)
}

/// `(4/π - 1) C + (2 - 4/π) A < T < C/3 + 2A/3` over sampled ratios.
pub fn theorem_1_2_verify(config: &SweepConfig) -> Result<SuiteReport> {
    suite_from_bounds("thm2", &[thm2_lower(), thm2_upper()], config)
}

/// The four earlier sharp bounds, as a consistency check of the means.
pub fn prior_bounds_regression(config: &SweepConfig) -> Result<SuiteReport> {
    suite_from_bounds("priors", &prior_bounds(), config)
}

/// Normalized gaps `(A - G, C̄ - A, S - C̄, C - S) / (C - A)` at `t`.
fn chain_gaps(t: f64) -> [f64; 4] {
    let s = (1.0 + t * t).sqrt();
    let w = 1.0 / (1.0 + s);
    [
        1.0 / (1.0 + (1.0 - t * t).sqrt()),
        1.0 / 3.0,
        w - 1.0 / 3.0,
        s * w,
    ]
}

/// Normalized gaps `(T - A, S - T) / (C - A)` at `t`.
fn sandwich_gaps(t: f64) -> [f64; 2] {
    let w = 1.0 / (1.0 + (1.0 + t * t).sqrt());
    // w - R = (w - 1/3) + D
    [ratio_unchecked(t), (w - 1.0 / 3.0) + deficit_unchecked(t)]
}

/// The ordering `G < A < C̄ < S < C` and the sandwich `A < T < S`.
///
/// Gaps are checked in reduced form for every sample; the directly evaluated
/// means must also be strictly ordered wherever `|a - b|/(a + b)` exceeds
/// `1e-4`, below which the gaps drop under double-precision resolution.
pub fn ordering_chain_verify(config: &SweepConfig) -> Result<SuiteReport> {
    config.validate()?;
    let ratios = sample_ratios(config);
    let identity = (f64::INFINITY, usize::MAX, f64::INFINITY, usize::MAX, 0usize);
    let (left, li, right, ri, direct_failures) = ratios
        .par_iter()
        .enumerate()
        .map(|(i, &x)| -> Result<(f64, usize, f64, usize, usize)> {
            let t = t_from_ratio(x);
            let chain = chain_gaps(t).into_iter().fold(f64::INFINITY, f64::min);
            let sandwich = sandwich_gaps(t).into_iter().fold(f64::INFINITY, f64::min);
            let mut fail = 0;
            if t >= DIRECT_RESOLUTION {
                let pair = PositivePair::from_ratio(x)?;
                let (g, a, cb, s, c) = (
                    geometric(pair),
                    arithmetic(pair),
                    centroidal_c(pair),
                    root_square(pair),
                    contra_harmonic(pair),
                );
                let tt = seiffert_t(pair);
                if !(g < a && a < cb && cb < s && s < c && a < tt && tt < s) {
                    fail = 1;
                }
            }
            Ok((chain, i, sandwich, i, fail))
        })
        .try_reduce(
            || identity,
            |l, r| {
                let (lv, lidx) = better_min((l.0, l.1), (r.0, r.1));
                let (rv, ridx) = better_min((l.2, l.3), (r.2, r.3));
                Ok((lv, lidx, rv, ridx, l.4 + r.4))
            },
        )?;
    let pass = left > 0.0 && right > 0.0 && direct_failures == 0;
    let witness = if pass {
        None
    } else {
        let (idx, slack) = if left <= right { (li, left) } else { (ri, right) };
        let pair = PositivePair::from_ratio(ratios[idx])?;
        Some(Witness {
            ratio: ratios[idx],
            slack,
            lhs: arithmetic(pair),
            rhs: seiffert_t(pair),
        })
    };
    Ok(SuiteReport {
        suite: "chain".to_string(),
        pass,
        n_samples: ratios.len(),
        min_slack_left: left,
        min_slack_right: right,
        witness,
        bounds: Vec::new(),
    })
}

/// Extremes of `R(t)` over a uniform grid and whether it decreases strictly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioScan {
    pub evaluations: usize,
    pub infimum: f64,
    pub infimum_at: f64,
    pub supremum: f64,
    pub supremum_at: f64,
    pub strictly_decreasing: bool,
}

/// Evaluates `R` on `n` equally spaced points of `[t_lo, t_hi]`.
pub fn scan_ratio_grid(t_lo: f64, t_hi: f64, n: usize) -> Result<RatioScan> {
    if !(t_lo > 0.0 && t_hi < 1.0 && t_lo < t_hi && n >= 2) {
        return domain(format!("ratio grid needs 0 < t_lo < t_hi < 1 and n >= 2, got [{t_lo}, {t_hi}], n = {n}"));
    }
    let step = (t_hi - t_lo) / (n - 1) as f64;
    let points: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { t_hi } else { t_lo + step * i as f64 })
        .collect();
    Ok(scan_points(&points))
}

/// Evaluates `R` on `n` points clustered geometrically at both ends of `(0, 1)`,
/// reaching `10^-depth` from each end.
pub fn scan_ratio_endpoints(depth: i32, n: usize) -> Result<RatioScan> {
    if n < 4 || !(1..=15).contains(&depth) {
        return domain("endpoint scan needs n >= 4 and 1 <= depth <= 15");
    }
    let half = n / 2;
    let near = |i: usize| 10f64.powf(-(depth as f64) + (depth as f64 - 0.31) * i as f64 / (half - 1) as f64);
    let mut points: Vec<f64> = (0..half).map(near).collect();
    points.extend((0..half).rev().map(|i| 1.0 - near(i)));
    Ok(scan_points(&points))
}

fn scan_points(points: &[f64]) -> RatioScan {
    let values: Vec<f64> = points.par_iter().map(|&t| ratio_unchecked(t)).collect();
    let mut inf = (f64::INFINITY, 0usize);
    let mut sup = (f64::NEG_INFINITY, 0usize);
    for (i, &v) in values.iter().enumerate() {
        inf = better_min(inf, (v, i));
        sup = better_max(sup, (v, i));
    }
    RatioScan {
        evaluations: values.len(),
        infimum: inf.0,
        infimum_at: points[inf.1],
        supremum: sup.0,
        supremum_at: points[sup.1],
        strictly_decreasing: values.windows(2).all(|w| w[1] < w[0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_in_range() {
        let cfg = SweepConfig {
            samples: 200_000,
            ..Default::default()
        };
        let a = sample_ratios(&cfg);
        let b = sample_ratios(&cfg);
        assert_eq!(a, b);
        assert_eq!(a.len(), 200_000 + boundary_ratios(cfg.ratio_max).len());
        assert!(a.iter().all(|&x| x > 1.0 && x <= cfg.ratio_max));
        let other = sample_ratios(&SweepConfig { seed: 7, ..cfg });
        assert_ne!(a[..100], other[..100]);
    }

    #[test]
    fn log_uniform_median() {
        let cfg = SweepConfig::with_samples(100_000);
        let mut v = sample_ratios(&cfg)[..100_000].to_vec();
        v.sort_by(f64::total_cmp);
        let median = v[50_000].log10();
        assert!((median - 4.0).abs() < 0.05, "{median}");
    }

    #[test]
    fn boundary_points() {
        let b = boundary_ratios(1e8);
        assert!(b.contains(&(1.0 + 1e-9)));
        assert!(b.contains(&1e7));
        assert_eq!(*b.last().unwrap(), 1e8);
        assert!(b.iter().all(|&x| x > 1.0));
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::with_samples(0).validate().is_err());
        let bad = SweepConfig {
            ratio_max: 1.0,
            ..Default::default()
        };
        assert!(theorem_1_1_verify(&bad).is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = SweepConfig::with_samples(20_000);
        for report in [
            theorem_1_1_verify(&cfg).unwrap(),
            theorem_1_2_verify(&cfg).unwrap(),
            prior_bounds_regression(&cfg).unwrap(),
            ordering_chain_verify(&cfg).unwrap(),
        ] {
            assert!(report.pass, "{report:?}");
            assert!(report.witness.is_none());
            assert!(report.min_slack_left > 0.0 && report.min_slack_right > 0.0);
            for b in &report.bounds {
                assert!(b.max_direct_discrepancy < 1e-14, "{}: {}", b.name, b.max_direct_discrepancy);
            }
        }
    }

    #[test]
    fn grid_scan_rejects_bad_interval() {
        assert!(scan_ratio_grid(0.0, 0.5, 10).is_err());
        assert!(scan_ratio_grid(0.5, 0.4, 10).is_err());
        assert!(scan_ratio_endpoints(0, 10).is_err());
    }
}
