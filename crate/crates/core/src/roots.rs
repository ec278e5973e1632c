//! Sign-change scanning and bisection.

use crate::error::{Error, Result};

/// A bracket `[lo, hi]` across which the function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }
}

/// Bisects `f` on `[lo, hi]` until the bracket is no wider than `width`.
///
/// Requires `f(lo)` and `f(hi)` of opposite signs (a zero endpoint counts as a
/// sign change). Stops early when the midpoint can no longer split the bracket.
pub fn bisect<F>(f: F, lo: f64, hi: f64, width: f64) -> Result<Bracket>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(Bracket { lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Bracket { lo: hi, hi });
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(format!(
            "f({lo}) = {f_lo} and f({hi}) = {f_hi} do not straddle zero"
        )));
    }
    while hi - lo > width {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(Bracket { lo, hi })
}

/// First consecutive pair in `grid` where `f` goes from negative to positive.
pub fn first_upcrossing<F>(f: F, grid: &[f64]) -> Option<Bracket>
where
    F: Fn(f64) -> f64,
{
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let fx = f(x);
        if let Some((px, pf)) = prev {
            if pf < 0.0 && fx >= 0.0 {
                return Some(Bracket { lo: px, hi: x });
            }
        }
        prev = Some((x, fx));
    }
    None
}

/// `n` points `1 + s` with `s` log-spaced over `[s_min, s_max]`.
pub fn log_grid_above_one(s_min: f64, s_max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && s_min > 0.0 && s_max > s_min);
    let (l0, l1) = (s_min.ln(), s_max.ln());
    (0..n)
        .map(|i| 1.0 + (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
