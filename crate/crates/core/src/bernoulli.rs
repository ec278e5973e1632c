//! Exact Bernoulli numbers and the even zeta values built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Largest `n` for which `B_{2n}` is tabulated.
pub const N_MAX: usize = 60;

/// Even-indexed Bernoulli numbers `B_0, B_2, ..., B_{2 N_MAX}`.
///
/// Built once from the defining recurrence
/// `sum_{k=0}^{m} binom(m+1, k) B_k = 0`, `B_0 = 1`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

static TABLE: Lazy<BernoulliTable> = Lazy::new(|| BernoulliTable::build(N_MAX));

impl BernoulliTable {
    pub fn build(n_max: usize) -> Self {
        let top = 2 * n_max;
        // all B_m including odd indices, needed by the recurrence
        let mut all: Vec<BigRational> = Vec::with_capacity(top + 1);
        all.push(BigRational::one());
        for m in 1..=top {
            if m > 1 && m % 2 == 1 {
                all.push(BigRational::zero());
                continue;
            }
            let mut binom = BigInt::one(); // binom(m+1, 0)
            let mut acc = BigRational::zero();
            for (k, b) in all.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(binom.clone());
                }
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            all.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let values = all.into_iter().step_by(2).collect();
        BernoulliTable { values }
    }

    /// The shared table with `N_MAX` entries.
    pub fn shared() -> &'static BernoulliTable {
        &TABLE
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `B_{2n}` for `0 <= n <= n_max`.
    pub fn get(&self, n: usize) -> Result<&BigRational> {
        self.values.get(n).ok_or_else(|| {
            Error::Range(format!("B_{{2n}} requested for n = {n}, table holds n <= {}", self.n_max()))
        })
    }

    /// `|B_{2n}|`.
    pub fn abs(&self, n: usize) -> Result<BigRational> {
        self.get(n).map(|b| b.abs())
    }
}

/// `B_{2n}` for `1 <= n <= N_MAX`.
pub fn bernoulli_even(n: usize) -> Result<BigRational> {
    if n == 0 || n > N_MAX {
        return Err(Error::Range(format!("bernoulli_even needs 1 <= n <= {N_MAX}, got {n}")));
    }
    BernoulliTable::shared().get(n).cloned()
}

/// `(2n)!` as a big integer.
pub(crate) fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `2^{2n} |B_{2n}| / (2n)!`, the magnitude shared by the cot and csc^2 expansions.
pub fn cot_coefficient_magnitude(n: usize) -> Result<BigRational> {
    let b = bernoulli_even(n)?.abs();
    let num = BigInt::one() << (2 * n);
    Ok(b * BigRational::new(num, factorial(2 * n)))
}

/// `zeta(2q) = (-1)^{q-1} (2 pi)^{2q} B_{2q} / (2 (2q)!)`, rounded once to a double.
///
/// Values for `q >= 27` round to exactly `1.0`; use
/// [`Oracle::zeta_even`](crate::oracle::Oracle::zeta_even) to resolve them.
pub fn zeta_even(q: usize) -> Result<f64> {
    static PI: Lazy<BigRational> = Lazy::new(|| {
        let (num, den) = crate::oracle::Oracle::new(60).pi_fraction();
        BigRational::new(num, den)
    });
    let b = bernoulli_even(q)?.abs();
    let two_pi = &*PI * BigRational::from_integer(BigInt::from(2));
    let power = num_traits::pow(two_pi, 2 * q);
    let value = b * power / BigRational::from_integer(factorial(2 * q) * 2);
    Ok(value.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_even_values() {
        assert_eq!(bernoulli_even(1).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_even(2).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_even(3).unwrap(), rat(1, 42));
        assert_eq!(bernoulli_even(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_even(5).unwrap(), rat(5, 66));
        assert_eq!(bernoulli_even(6).unwrap(), rat(-691, 2730));
        assert_eq!(BernoulliTable::shared().get(0).unwrap(), &BigRational::one());
    }

    #[test]
    fn range_errors() {
        assert!(matches!(bernoulli_even(0), Err(Error::Range(_))));
        assert!(matches!(bernoulli_even(61), Err(Error::Range(_))));
        assert!(zeta_even(61).is_err());
    }

    #[test]
    fn sign_law() {
        for n in 1..=N_MAX {
            let b = bernoulli_even(n).unwrap();
            let signed = if n % 2 == 1 { b } else { -b };
            assert!(signed.is_positive(), "sign law fails at n = {n}");
        }
    }

    #[test]
    fn known_large_value() {
        // B_30 = 8615841276005 / 14322
        assert_eq!(bernoulli_even(15).unwrap(), rat(8615841276005, 14322));
    }

    #[test]
    fn small_table_matches_shared() {
        let t = BernoulliTable::build(10);
        assert_eq!(t.n_max(), 10);
        for n in 0..=10 {
            assert_eq!(t.get(n).unwrap(), BernoulliTable::shared().get(n).unwrap());
        }
        assert!(t.get(11).is_err());
    }

    #[test]
    fn zeta_two_and_four() {
        assert!((zeta_even(1).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(2).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_against_partial_sums() {
        // direct summation to 10^8 terms, tail squeezed between integrals
        let m = 100_000_000u64;
        let mut sum = 0.0f64;
        for n in (1..=m).rev() {
            let x = n as f64;
            sum += 1.0 / (x * x);
        }
        let lo = sum + 1.0 / (m as f64 + 1.0);
        let hi = sum + 1.0 / m as f64;
        let z = zeta_even(1).unwrap();
        assert!(z > lo - 1e-12 && z < hi + 1e-12, "{lo} {z} {hi}");
        assert!((z - 1.6449340668482264).abs() < 1e-15);
    }

    #[test]
    fn zeta_decreases_toward_one() {
        let values: Vec<f64> = (1..=N_MAX).map(|q| zeta_even(q).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[1] <= w[0]);
        }
        // distinct from 1 in double precision up to q = 26
        for w in values[..26].windows(2) {
            assert!(w[1] < w[0]);
        }
        assert!(values.iter().all(|&v| v >= 1.0));
        let z30 = zeta_even(30).unwrap();
        assert!((1.0..=1.0 + 1e-17).contains(&z30));
    }
}
