//! The auxiliary-function chain behind the centroidal-blend bound.
//!
//! For `a = t b` with `t > 1` and blend weight `p`,
//!
//! ```text
//! C̄(blend) - T = Q(t, p) / (6 (1 + t) atan((t-1)/(t+1))) · b · f(t)
//! f(t)  = 4 atan((t-1)/(t+1)) - 3 (t² - 1) / Q(t, p)
//! f'(t) = f₁(t) / (Q² (1 + t²))
//! ```
//!
//! with `Q = u² + uv + v²`, `u = pt + 1 - p`, `v = p + (1 - p)t`, and the
//! quartic `f₁` reduced by `f₂ = f₁'/4`, `f₃ = f₂'/3`, `f₄ = f₃'/2`. The
//! polynomials are stored with integer coefficients in `p` so the reduction
//! steps can be checked exactly; numeric evaluation re-expands them about
//! `t = 1`, where they vanish to high order.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::means::{centroidal_blend, seiffert_t, PositivePair};
use crate::roots::{bisect, first_upcrossing, log_grid_above_one};

/// Polynomial in `p` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPoly(pub Vec<i64>);

impl PPoly {
    fn trimmed(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        PPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * p + c as f64)
    }

    fn scaled(&self, k: i64) -> Self {
        PPoly::trimmed(self.0.iter().map(|c| c * k).collect())
    }

    fn add(&self, other: &PPoly) -> Self {
        let n = self.0.len().max(other.0.len());
        PPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

/// `c₁(p) = 4p⁴ - 8p³ + 18p² - 14p + 1`.
pub fn c1() -> PPoly {
    PPoly(vec![1, -14, 18, -8, 4])
}

/// `c₂(p) = 4p⁴ - 8p³ + 9p² - 5p + 1`.
pub fn c2() -> PPoly {
    PPoly(vec![1, -5, 9, -8, 4])
}

/// `c₃(p) = 4p⁴ - 8p³ + 6p² - 2p + 1`.
pub fn c3() -> PPoly {
    PPoly(vec![1, -2, 6, -8, 4])
}

/// Polynomial in `t` whose coefficients are polynomials in `p`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPoly(pub Vec<PPoly>);

impl ChainPoly {
    /// Exact derivative in `t`.
    pub fn derivative(&self) -> ChainPoly {
        ChainPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scaled(k as i64))
                .collect(),
        )
    }

    pub fn scaled(&self, k: i64) -> ChainPoly {
        ChainPoly(self.0.iter().map(|c| c.scaled(k)).collect())
    }

    /// Exact value at `t = 1`, a polynomial in `p`.
    pub fn at_one(&self) -> PPoly {
        self.0.iter().fold(PPoly(vec![]), |acc, c| acc.add(c))
    }

    fn numeric(&self, p: f64) -> Vec<f64> {
        self.0.iter().map(|c| c.eval(p)).collect()
    }
}

/// The printed chain polynomial at `level` (1 to 4).
pub fn chain_poly(level: u8) -> Result<ChainPoly> {
    let (c1, c2, c3) = (c1(), c2(), c3());
    let coeffs = match level {
        1 => vec![c1.clone(), c2.scaled(-4), c3.scaled(6), c2.scaled(-4), c1],
        2 => vec![c2.scaled(-1), c3.scaled(3), c2.scaled(-3), c1],
        3 => vec![c3, c2.scaled(-2), c1],
        4 => vec![c2.scaled(-1), c1],
        _ => return Err(Error::Domain(format!("chain level must be 1..=4, got {level}"))),
    };
    Ok(ChainPoly(coeffs))
}

/// Re-expands ascending coefficients in `t` about `t = 1`.
fn taylor_shift_one(mut c: Vec<f64>) -> Vec<f64> {
    let n = c.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            c[j] += c[j + 1];
        }
    }
    c
}

/// The blend weight `p` of the auxiliary chain, `1/2 < p <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxFamily {
    p: f64,
    /// Coefficients of `f₁..f₄` in powers of `t - 1`.
    shifted: [Vec<f64>; 4],
}

impl AuxFamily {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.5 && p <= 1.0) {
            return domain(format!("blend weight p must lie in (1/2, 1], got {p}"));
        }
        let shifted = [1u8, 2, 3, 4].map(|level| {
            let poly = chain_poly(level).expect("levels 1..=4 exist");
            taylor_shift_one(poly.numeric(p))
        });
        Ok(AuxFamily { p, shifted })
    }

    /// The family at the sharp lower constant `λ`.
    pub fn lambda() -> Self {
        AuxFamily::new(crate::sharp::lambda_closed()).expect("lambda lies in (1/2, 1)")
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `Q(t, p) = u² + uv + v²`.
    pub fn q(&self, t: f64) -> f64 {
        let p = self.p;
        let u = p * t + (1.0 - p);
        let v = p + (1.0 - p) * t;
        u * u + u * v + v * v
    }

    /// `h₁(t) = Q² (1 + t²)`.
    pub fn h1(&self, t: f64) -> f64 {
        let q = self.q(t);
        q * q * (1.0 + t * t)
    }

    /// `f(t)` without a domain check; valid for every `t > 0`.
    pub(crate) fn f_raw(&self, t: f64) -> f64 {
        let s = t - 1.0;
        let angle = if t <= 2.0 {
            (s / (s + 2.0)).atan()
        } else {
            FRAC_PI_4 - (1.0 / t).atan()
        };
        4.0 * angle - 3.0 * s * (t + 1.0) / self.q(t)
    }

    /// `f(t) = 4 atan((t-1)/(t+1)) - 3(t² - 1)/Q(t, p)` for `t > 1`.
    pub fn f(&self, t: f64) -> Result<f64> {
        if !(t > 1.0) || !t.is_finite() {
            return domain(format!("f needs a finite t > 1, got {t}"));
        }
        Ok(self.f_raw(t))
    }

    fn chain_raw(&self, level: u8, t: f64) -> f64 {
        let s = t - 1.0;
        self.shifted[(level - 1) as usize]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * s + c)
    }

    /// `f₁..f₄` at `t >= 1`.
    pub fn f_chain(&self, t: f64, level: u8) -> Result<f64> {
        if !(1..=4).contains(&level) {
            return Err(Error::Domain(format!("chain level must be 1..=4, got {level}")));
        }
        if !(t >= 1.0) || !t.is_finite() {
            return domain(format!("f_chain needs a finite t >= 1, got {t}"));
        }
        Ok(self.chain_raw(level, t))
    }

    /// Prefactor of `f` in `C̄(blend) - T` at `a = t`, `b = 1`.
    pub fn difference_prefactor(&self, t: f64) -> f64 {
        let angle = ((t - 1.0) / (t + 1.0)).atan();
        self.q(t) / (6.0 * (1.0 + t) * angle)
    }
}

/// `lim_{t→∞} f(t) = π - 3/(p² - p + 1)`.
pub fn limit_at_infinity(p: f64) -> f64 {
    PI - 3.0 / (p * p - p + 1.0)
}

/// Central-difference step used by [`f_derivative_identity_check`].
pub fn fd_step(t: f64) -> f64 {
    1e-6 * t.max(1.0)
}

/// Largest residual `|f'(t) h₁(t) - f₁(t)|` over `grid`, relative to `4 Q²`.
///
/// `f'` is a central finite difference; `4 Q²` is the size of the leading term
/// of `f' h₁`, so the residual measures agreement at the scale where the
/// cancellation in `f₁` happens.
pub fn f_derivative_identity_check(fam: &AuxFamily, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &t in grid {
        if !(t > 1.0) {
            return domain(format!("derivative check needs grid points above 1, got {t}"));
        }
        let h = fd_step(t);
        let derivative = (fam.f_raw(t + h) - fam.f_raw(t - h)) / (2.0 * h);
        let q = fam.q(t);
        let residual = (derivative * fam.h1(t) - fam.chain_raw(1, t)).abs() / (4.0 * q * q);
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Switch points of the chain at `p = λ` together with their checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPointReport {
    /// Sign change of `f₄`, the minimizer of `f₃`.
    pub t0: f64,
    /// Sign change of `f₃`, the minimizer of `f₂`.
    pub t1: f64,
    /// Sign change of `f₂`, the minimizer of `f₁`.
    pub t2: f64,
    /// Sign change of `f₁`, the minimizer of `f`.
    pub t3: f64,
    /// Widest final bisection bracket.
    pub bracket_width: f64,
    /// `|f₄(t₀)|, |f₃(t₁)|, |f₂(t₂)|, |f₁(t₃)|`.
    pub residuals: [f64; 4],
}

impl CriticalPointReport {
    pub fn points(&self) -> [f64; 4] {
        [self.t0, self.t1, self.t2, self.t3]
    }

    pub fn ordered(&self) -> bool {
        1.0 < self.t0 && self.t0 < self.t1 && self.t1 < self.t2 && self.t2 < self.t3
    }
}

const SCAN_MAX: f64 = 1e6;
const BRACKET_WIDTH: f64 = 1e-12;

/// Whether `g` decreases on grid points below `tau` and increases above it.
fn valley_shape(g: impl Fn(f64) -> f64, tau: f64, grid: &[f64]) -> bool {
    let below: Vec<f64> = grid.iter().copied().filter(|&t| t < tau * (1.0 - 1e-2)).collect();
    let above: Vec<f64> = grid.iter().copied().filter(|&t| t > tau * (1.0 + 1e-2)).collect();
    let dec = below.windows(2).all(|w| g(w[1]) < g(w[0]));
    let inc = above.windows(2).all(|w| g(w[1]) > g(w[0]));
    dec && inc
}

/// Locates `t₀ < t₁ < t₂ < t₃` by a log-spaced scan of `(1, 1e6]` and bisection.
///
/// Fails with [`Error::Bracket`] if a sign change is missing, the points are
/// out of order, or one of the functions is not decreasing-then-increasing
/// around its switch point.
pub fn locate_critical_points(fam: &AuxFamily) -> Result<CriticalPointReport> {
    let grid = log_grid_above_one(1e-9, SCAN_MAX - 1.0, 4000);
    let mut roots = [0.0; 4];
    let mut residuals = [0.0; 4];
    let mut width: f64 = 0.0;
    // f4 -> t0, f3 -> t1, f2 -> t2, f1 -> t3
    for (slot, level) in [4u8, 3, 2, 1].into_iter().enumerate() {
        let g = |t: f64| fam.chain_raw(level, t);
        let b = first_upcrossing(g, &grid).ok_or_else(|| {
            Error::Bracket(format!("f{level} has no sign change on (1, {SCAN_MAX}] for p = {}", fam.p))
        })?;
        let refined = bisect(g, b.lo, b.hi, BRACKET_WIDTH)?;
        roots[slot] = refined.midpoint();
        residuals[slot] = g(roots[slot]).abs();
        width = width.max(refined.width());
    }
    let report = CriticalPointReport {
        t0: roots[0],
        t1: roots[1],
        t2: roots[2],
        t3: roots[3],
        bracket_width: width,
        residuals,
    };
    if !report.ordered() {
        return Err(Error::Bracket(format!("switch points out of order: {:?}", report.points())));
    }

    // f' has the sign of f1, so f must turn around at t3
    let (below, above) = (report.t3 * (1.0 - 1e-3), report.t3 * (1.0 + 1e-3));
    let slope = |t: f64| {
        let h = fd_step(t);
        fam.f_raw(t + h) - fam.f_raw(t - h)
    };
    if !(slope(below) < 0.0 && slope(above) > 0.0) {
        return Err(Error::Bracket(format!("f does not turn around at t3 = {}", report.t3)));
    }

    let shape_grid = log_grid_above_one(1e-3, SCAN_MAX - 1.0, 400);
    let checks: [(&dyn Fn(f64) -> f64, f64, &str); 4] = [
        (&|t| fam.chain_raw(3, t), report.t0, "f3"),
        (&|t| fam.chain_raw(2, t), report.t1, "f2"),
        (&|t| fam.chain_raw(1, t), report.t2, "f1"),
        (&|t| fam.f_raw(t), report.t3, "f"),
    ];
    for (g, tau, name) in checks {
        if !valley_shape(g, tau, &shape_grid) {
            return Err(Error::Bracket(format!("{name} is not decreasing-then-increasing about {tau}")));
        }
    }
    Ok(report)
}

/// Everything checked about the chain at `p = λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCertificate {
    pub p: f64,
    /// `c₁(λ)`, the leading coefficient shared by `f₁..f₄`.
    pub leading_coefficient: f64,
    pub f3_at_one: f64,
    pub f4_at_one: f64,
    pub limit_at_infinity: f64,
    pub f_at_1e8: f64,
    pub critical_points: CriticalPointReport,
    pub grid_points: usize,
    /// Largest value of `f` on the log grid of `(1, 1e8)`.
    pub max_f_on_grid: f64,
    pub negative_on_grid: bool,
}

/// Certifies the sign and limit facts of the chain at `p = λ`.
pub fn certify_lambda_chain(grid_points: usize) -> Result<ChainCertificate> {
    let fam = AuxFamily::lambda();
    let critical_points = locate_critical_points(&fam)?;
    let log_top = 1e8f64.ln();
    let max_f = (1..=grid_points)
        .map(|i| fam.f_raw((log_top * i as f64 / (grid_points + 1) as f64).exp()))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ChainCertificate {
        p: fam.p,
        leading_coefficient: c1().eval(fam.p),
        f3_at_one: fam.chain_raw(3, 1.0),
        f4_at_one: fam.chain_raw(4, 1.0),
        limit_at_infinity: limit_at_infinity(fam.p),
        f_at_1e8: fam.f_raw(1e8),
        critical_points,
        grid_points,
        max_f_on_grid: max_f,
        negative_on_grid: max_f < 0.0,
    })
}

/// Which side of the sharp range a counterexample is sought on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSide {
    /// `λ < p < 1`: the blend mean overtakes `T` for large ratios.
    AboveLambda,
    /// `1/2 < p < 1`: `T` overtakes the blend mean just above the diagonal.
    BelowOne,
}

/// A ratio at which the blend mean falls on the wrong side of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub p: f64,
    pub side: WitnessSide,
    /// The ratio `a/b` with `b = 1`.
    pub t: f64,
    pub blend_mean: f64,
    pub seiffert_mean: f64,
    pub f_value: f64,
}

/// Searches `(1, 1e12]` for a ratio violating the centroidal-blend bound at weight `p`.
///
/// A candidate must have `f` of the right sign and a direct mean difference
/// above `1e-13` relative, so the violation is visible without the reduction.
pub fn counterexample_witness(p: f64, side: WitnessSide) -> Result<Counterexample> {
    let ok = match side {
        WitnessSide::AboveLambda => p > crate::sharp::lambda_closed() && p < 1.0,
        WitnessSide::BelowOne => p > 0.5 && p < 1.0,
    };
    if !ok {
        return domain(format!("p = {p} is outside the range for {side:?}"));
    }
    let fam = AuxFamily::new(p)?;
    let grid = log_grid_above_one(1e-7, 1e12, 6000);
    for &t in &grid {
        let f = fam.f_raw(t);
        let pair = PositivePair::from_ratio(t)?;
        let blend = centroidal_blend(p, pair)?;
        let seiffert = seiffert_t(pair);
        let gap = (blend - seiffert) / seiffert;
        let found = match side {
            WitnessSide::AboveLambda => f > 0.0 && gap > 1e-13,
            WitnessSide::BelowOne => f < 0.0 && gap < -1e-13,
        };
        if found {
            return Ok(Counterexample {
                p,
                side,
                t,
                blend_mean: blend,
                seiffert_mean: seiffert,
                f_value: f,
            });
        }
    }
    Err(Error::NoWitness(format!("no violation of the blend bound for p = {p} on (1, 1e12]")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_steps_are_exact() {
        let f: Vec<ChainPoly> = (1..=4).map(|l| chain_poly(l).unwrap()).collect();
        assert_eq!(f[0].derivative(), f[1].scaled(4));
        assert_eq!(f[1].derivative(), f[2].scaled(3));
        assert_eq!(f[2].derivative(), f[3].scaled(2));
    }

    #[test]
    fn endpoint_values_are_exact() {
        assert!(chain_poly(1).unwrap().at_one().is_zero());
        assert!(chain_poly(2).unwrap().at_one().is_zero());
        assert_eq!(chain_poly(3).unwrap().at_one(), PPoly(vec![0, -6, 6]));
        assert_eq!(chain_poly(4).unwrap().at_one(), PPoly(vec![0, -9, 9]));
    }

    #[test]
    fn p_one_collapses_to_quartic() {
        let fam = AuxFamily::new(1.0).unwrap();
        assert_eq!(fam.f_chain(3.0, 1).unwrap(), 16.0);
        assert_eq!(fam.shifted[0], vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn lambda_sign_facts() {
        let fam = AuxFamily::lambda();
        let f1 = fam.f_chain(1.0, 1).unwrap();
        assert!(f1.abs() < 1e-14, "{f1}");
        let f3 = fam.f_chain(1.0, 3).unwrap();
        assert!((f3 - (18.0 / PI - 6.0)).abs() < 1e-14);
        assert!((f3 + 0.270_42).abs() < 1e-5);
        assert!((fam.f_chain(1.0, 4).unwrap() - (27.0 / PI - 9.0)).abs() < 1e-14);
        let lead = c1().eval(fam.p());
        let expect = (36.0 + 18.0 * PI - 9.0 * PI * PI) / (PI * PI);
        assert!((lead - expect).abs() < 1e-14);
        assert!((lead - 0.377_14).abs() < 1e-5);
    }

    #[test]
    fn f_limits() {
        let fam = AuxFamily::new(1.0).unwrap();
        assert!(fam.f(1.0 + 1e-9).unwrap().abs() < 1e-8);
        assert!((fam.f(1e12).unwrap() - (PI - 3.0)).abs() < 1e-10);
        assert!((limit_at_infinity(1.0) - (PI - 3.0)).abs() < 1e-15);
        let lam = AuxFamily::lambda();
        assert!(lam.f(1e8).unwrap().abs() < 1e-6);
        assert!(lam.f(1.0).is_err());
    }

    #[test]
    fn domain_checks() {
        assert!(AuxFamily::new(0.5).is_err());
        assert!(AuxFamily::new(1.0 + 1e-12).is_err());
        let fam = AuxFamily::new(0.8).unwrap();
        assert!(fam.f_chain(2.0, 0).is_err());
        assert!(fam.f_chain(2.0, 5).is_err());
        assert!(fam.f_chain(0.9, 1).is_err());
        assert!(chain_poly(9).is_err());
        assert!(f_derivative_identity_check(&fam, &[1.0]).is_err());
    }

    #[test]
    fn derivative_identity_examples() {
        let grid: Vec<f64> = (1..=100).map(|i| 1.0 + 49.0 * i as f64 / 100.0).collect();
        for p in [0.8, 1.0, crate::sharp::lambda_closed()] {
            let fam = AuxFamily::new(p).unwrap();
            assert!(f_derivative_identity_check(&fam, &grid).unwrap() <= 1e-6, "p = {p}");
        }
        let near: Vec<f64> = (1..=100).map(|i| 1.0 + 1e-2 * i as f64 / 100.0).collect();
        let lam = AuxFamily::lambda();
        assert!(f_derivative_identity_check(&lam, &near).unwrap() <= 1e-6);
    }

    #[test]
    fn difference_factorization() {
        for &(p, t) in &[(0.6, 2.0), (0.8, 5.0), (0.95, 40.0), (1.0, 1.5)] {
            let fam = AuxFamily::new(p).unwrap();
            let pair = PositivePair::from_ratio(t).unwrap();
            let lhs = centroidal_blend(p, pair).unwrap() - seiffert_t(pair);
            let rhs = fam.difference_prefactor(t) * fam.f(t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * seiffert_t(pair), "p={p} t={t}: {lhs} {rhs}");
        }
    }

    #[test]
    fn critical_points_at_lambda() {
        let r = locate_critical_points(&AuxFamily::lambda()).unwrap();
        assert!(r.ordered());
        assert!(r.residuals.iter().all(|&x| x < 1e-10), "{r:?}");
        assert!(r.bracket_width <= 1e-12);
        // f4 is linear: t0 = c2/c1
        let p = crate::sharp::lambda_closed();
        assert!((r.t0 - c2().eval(p) / c1().eval(p)).abs() < 1e-11);
    }

    #[test]
    fn counterexamples() {
        let w = counterexample_witness(0.97, WitnessSide::AboveLambda).unwrap();
        assert!(w.t < 1e12 && w.blend_mean > w.seiffert_mean);
        let w = counterexample_witness(0.99, WitnessSide::BelowOne).unwrap();
        assert!(w.t > 1.0 && w.t < 1.5 && w.seiffert_mean > w.blend_mean);
        let w = counterexample_witness(0.75, WitnessSide::BelowOne).unwrap();
        assert!(w.t < 1.01);
        assert!(counterexample_witness(0.9, WitnessSide::AboveLambda).is_err());
        assert!(counterexample_witness(1.0, WitnessSide::BelowOne).is_err());
    }
}
