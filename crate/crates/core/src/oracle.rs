//! High-precision reference evaluations in decimal fixed-point arithmetic.
//!
//! Every quantity is held as a big integer scaled by `10^(digits + GUARD)`.
//! The routines here share nothing with the double-precision evaluation
//! paths (no `f64` transcendental is ever called), so they serve as
//! independent oracles for the means, the trigonometric series and the
//! even zeta values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bernoulli;
use crate::error::{domain, Result};

const GUARD: u32 = 24;

/// A fixed-point value carrying its own scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpValue {
    raw: BigInt,
    frac_digits: u32,
    shown: u32,
}

impl HpValue {
    /// Nearest double to the stored value (correctly rounded by the parser).
    pub fn to_f64(&self) -> f64 {
        self.render(self.frac_digits).parse().unwrap_or(f64::NAN)
    }

    /// `|self - x|`, formed before any rounding to double.
    pub fn distance_to(&self, x: f64) -> f64 {
        let diff = &self.raw - fixed_from_f64(x, &pow10(self.frac_digits));
        HpValue {
            raw: diff.abs(),
            frac_digits: self.frac_digits,
            shown: self.shown,
        }
        .to_f64()
    }

    pub fn is_positive(&self) -> bool {
        self.raw.is_positive()
    }

    fn render(&self, shown: u32) -> String {
        let scale = pow10(self.frac_digits);
        let (int, frac) = self.raw.abs().div_rem(&scale);
        let mut frac = format!("{:0>width$}", frac.to_string(), width = self.frac_digits as usize);
        frac.truncate(shown as usize);
        let sign = if self.raw.is_negative() { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Display for HpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.shown))
    }
}

/// `x * scale`, truncated toward zero; exact for every finite double.
fn fixed_from_f64(x: f64, scale: &BigInt) -> BigInt {
    assert!(x.is_finite(), "oracle input must be finite");
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let scaled = BigInt::from(mantissa) * scale;
    let magnitude = if e >= 0 {
        scaled << (e as usize)
    } else {
        scaled >> ((-e) as usize)
    };
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), n as usize)
}

/// Reference evaluator working with `digits` decimal places (plus guard digits).
#[derive(Debug, Clone)]
pub struct Oracle {
    digits: u32,
    frac: u32,
    scale: BigInt,
    pi: BigInt,
}

impl Oracle {
    pub fn new(digits: u32) -> Self {
        let frac = digits + GUARD;
        let scale = pow10(frac);
        let mut oracle = Oracle {
            digits,
            frac,
            scale,
            pi: BigInt::zero(),
        };
        oracle.pi = oracle.machin_pi();
        oracle
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn wrap(&self, raw: BigInt) -> HpValue {
        HpValue {
            raw,
            frac_digits: self.frac,
            shown: self.digits,
        }
    }

    /// Exact conversion of a double, truncated to the working scale.
    fn fixed(&self, x: f64) -> BigInt {
        fixed_from_f64(x, &self.scale)
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) / &self.scale
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * &self.scale) / b
    }

    fn sqrt(&self, a: &BigInt) -> BigInt {
        assert!(!a.is_negative());
        (a * &self.scale).sqrt()
    }

    fn machin_pi(&self) -> BigInt {
        // pi = 16 atan(1/5) - 4 atan(1/239)
        BigInt::from(16) * self.atan_inv(5) - BigInt::from(4) * self.atan_inv(239)
    }

    fn atan_inv(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        let n2 = &n * &n;
        let mut power = &self.scale / &n;
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &n2;
            k += 1;
        }
        sum
    }

    fn atan_fixed(&self, x: &BigInt) -> BigInt {
        if x.is_negative() {
            return -self.atan_fixed(&-x);
        }
        if x > &self.scale {
            let half_pi = &self.pi / 2;
            let inv = self.div(&self.scale, x);
            return half_pi - self.atan_fixed(&inv);
        }
        // atan(x) = 2 atan(x / (1 + sqrt(1 + x^2))) until the argument is small
        let small = &self.scale / BigInt::from(100);
        let mut y = x.clone();
        let mut doublings = 0u32;
        while y > small {
            let root = self.sqrt(&(&self.scale + self.mul(&y, &y)));
            y = self.div(&y, &(&self.scale + root));
            doublings += 1;
        }
        let y2 = self.mul(&y, &y);
        let mut power = y.clone();
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power = self.mul(&power, &y2);
            k += 1;
        }
        sum << doublings
    }

    fn sin_cos_fixed(&self, x: &BigInt) -> (BigInt, BigInt) {
        let mut sin = BigInt::zero();
        let mut cos = BigInt::zero();
        // term_k = x^k / k!, signs cycle with period four
        let mut term = self.scale.clone();
        let mut k = 0i64;
        while !term.is_zero() {
            match k % 4 {
                0 => cos += &term,
                1 => sin += &term,
                2 => cos -= &term,
                _ => sin -= &term,
            }
            term = self.mul(&term, x) / BigInt::from(k + 1);
            k += 1;
        }
        (sin, cos)
    }

    pub fn pi(&self) -> HpValue {
        self.wrap(self.pi.clone())
    }

    pub fn atan(&self, x: f64) -> HpValue {
        self.wrap(self.atan_fixed(&self.fixed(x)))
    }

    /// `cot x` for a nonzero double argument of moderate size.
    pub fn cot(&self, x: f64) -> Result<HpValue> {
        if x == 0.0 || !x.is_finite() || x.abs() > 8.0 {
            return domain("oracle cot needs 0 < |x| <= 8");
        }
        let (s, c) = self.sin_cos_fixed(&self.fixed(x));
        Ok(self.wrap(self.div(&c, &s)))
    }

    /// `1 / sin^2 x` for a nonzero double argument of moderate size.
    pub fn csc2(&self, x: f64) -> Result<HpValue> {
        if x == 0.0 || !x.is_finite() || x.abs() > 8.0 {
            return domain("oracle csc2 needs 0 < |x| <= 8");
        }
        let (s, _) = self.sin_cos_fixed(&self.fixed(x));
        let s2 = self.mul(&s, &s);
        Ok(self.wrap(self.div(&self.scale, &s2)))
    }

    /// `cot(theta)/theta - 1/sin^2(theta) + 1`.
    pub fn ratio_theta(&self, theta: f64) -> Result<HpValue> {
        if theta <= 0.0 || theta > 1.0 {
            return domain("oracle ratio_theta needs 0 < theta <= 1");
        }
        let th = self.fixed(theta);
        let (s, c) = self.sin_cos_fixed(&th);
        let cot = self.div(&c, &s);
        let csc2 = self.div(&self.scale, &self.mul(&s, &s));
        Ok(self.wrap(self.div(&cot, &th) - csc2 + &self.scale))
    }

    /// `(t / atan t - 1) / t^2`.
    pub fn ratio_t(&self, t: f64) -> Result<HpValue> {
        if t <= 0.0 || t > 1.0 {
            return domain("oracle ratio_t needs 0 < t <= 1");
        }
        let tt = self.fixed(t);
        let q = self.div(&tt, &self.atan_fixed(&tt)) - &self.scale;
        Ok(self.wrap(self.div(&q, &self.mul(&tt, &tt))))
    }

    pub fn arithmetic(&self, a: f64, b: f64) -> HpValue {
        self.wrap((self.fixed(a) + self.fixed(b)) / 2)
    }

    pub fn geometric(&self, a: f64, b: f64) -> HpValue {
        self.wrap(self.sqrt(&self.mul(&self.fixed(a), &self.fixed(b))))
    }

    pub fn root_square(&self, a: f64, b: f64) -> HpValue {
        let (a, b) = (self.fixed(a), self.fixed(b));
        let s = (self.mul(&a, &a) + self.mul(&b, &b)) / 2;
        self.wrap(self.sqrt(&s))
    }

    pub fn contra_harmonic(&self, a: f64, b: f64) -> HpValue {
        let (a, b) = (self.fixed(a), self.fixed(b));
        let num = self.mul(&a, &a) + self.mul(&b, &b);
        self.wrap(self.div(&num, &(a + b)))
    }

    pub fn centroidal(&self, a: f64, b: f64) -> HpValue {
        let (a, b) = (self.fixed(a), self.fixed(b));
        self.wrap(self.centroidal_fixed(&a, &b))
    }

    fn centroidal_fixed(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let num = (self.mul(a, a) + self.mul(a, b) + self.mul(b, b)) * 2;
        self.div(&num, &((a + b) * 3))
    }

    /// Centroidal mean of `(x a + (1-x) b, x b + (1-x) a)`.
    pub fn blend(&self, x: f64, a: f64, b: f64) -> HpValue {
        let (x, a, b) = (self.fixed(x), self.fixed(a), self.fixed(b));
        let one_minus = &self.scale - &x;
        let u = self.mul(&x, &a) + self.mul(&one_minus, &b);
        let v = self.mul(&x, &b) + self.mul(&one_minus, &a);
        self.wrap(self.centroidal_fixed(&u, &v))
    }

    /// Seiffert mean `(a-b) / (2 atan((a-b)/(a+b)))`, value `a` on the diagonal.
    pub fn seiffert(&self, a: f64, b: f64) -> HpValue {
        let (a, b) = (self.fixed(a), self.fixed(b));
        if a == b {
            return self.wrap(a);
        }
        let diff = &a - &b;
        let t = self.div(&diff, &(&a + &b));
        let at = self.atan_fixed(&t);
        self.wrap(self.div(&diff, &(at * 2)))
    }

    /// `zeta(2q)` through the Bernoulli closed form, with `pi` at working precision.
    /// `pi` as an exact fraction with the working scale as denominator.
    pub(crate) fn pi_fraction(&self) -> (BigInt, BigInt) {
        (self.pi.clone(), self.scale.clone())
    }

    pub fn zeta_even(&self, q: usize) -> Result<HpValue> {
        let b = bernoulli::bernoulli_even(q)?;
        let two_pi = &self.pi * 2;
        let mut power = self.scale.clone();
        for _ in 0..2 * q {
            power = self.mul(&power, &two_pi);
        }
        let mut factorial = BigInt::one();
        for k in 2..=(2 * q) {
            factorial *= BigInt::from(k);
        }
        let num = b.numer().abs() * power;
        let den = b.denom() * factorial * 2;
        Ok(self.wrap(num / den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

    #[test]
    fn machin_pi_digits() {
        let o = Oracle::new(50);
        assert_eq!(o.pi().to_string(), PI_50);
    }

    #[test]
    fn atan_of_one_is_quarter_pi() {
        let o = Oracle::new(60);
        let quarter = o.atan(1.0);
        let pi = o.pi();
        let diff: BigInt = &quarter.raw * BigInt::from(4) - &pi.raw;
        let diff = diff.abs();
        assert!(diff < BigInt::from(10_000), "{diff}");
    }

    #[test]
    fn seiffert_one_three() {
        // 1 / atan(1/2) = 2.15681040...
        let o = Oracle::new(40);
        let v = o.seiffert(1.0, 3.0);
        assert!(v.to_string().starts_with("2.1568104"));
        assert_eq!(o.seiffert(2.5, 2.5).to_f64(), 2.5);
    }

    #[test]
    fn cot_and_csc2_at_half() {
        let o = Oracle::new(40);
        assert!(o.cot(0.5).unwrap().to_string().starts_with("1.8304877217"));
        assert!(o.csc2(0.5).unwrap().to_string().starts_with("4.3506852"));
        assert!(o.cot(-0.5).unwrap().to_string().starts_with("-1.8304877217"));
        assert!(o.cot(0.0).is_err());
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let o = Oracle::new(50);
        let z = o.zeta_even(1).unwrap();
        let pi = &o.pi;
        let expect: BigInt = o.mul(pi, pi) / BigInt::from(6);
        let gap: BigInt = &z.raw - expect;
        assert!(gap.abs() < BigInt::from(1000));
    }

    #[test]
    fn f64_conversion_is_exact() {
        let o = Oracle::new(30);
        assert_eq!(o.arithmetic(0.1, 0.1).to_f64(), 0.1);
        assert_eq!(o.centroidal(3.0, 3.0).to_f64(), 3.0);
    }
}
