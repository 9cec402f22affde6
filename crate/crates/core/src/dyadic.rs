//! Exact dyadic numbers `m · 2^e` on top of `BigInt`.
//!
//! Addition, subtraction, multiplication and comparison are exact; division
//! and decimal conversion round explicitly. These are the carriers for the
//! centers and radii of certified enclosures.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exp: 0 }
    }

    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mantissa, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// 2^e.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mantissa: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mantissa: -&self.mantissa, exp: self.exp }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = (hi.exp - lo.exp) as u64;
        let m = (&hi.mantissa << shift) + &lo.mantissa;
        Dyadic::new(m, lo.exp)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }

    pub fn mul_int(&self, rhs: &BigInt) -> Self {
        if rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.mantissa * rhs, self.exp)
    }

    /// Exact halving.
    pub fn half(&self) -> Self {
        Dyadic { mantissa: self.mantissa.clone(), exp: self.exp - 1 }
    }

    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exp: self.exp + k }
    }

    pub fn cmp_val(&self, rhs: &Self) -> Ordering {
        match (self.signum(), rhs.signum()) {
            (a, b) if a < b => return Ordering::Less,
            (a, b) if a > b => return Ordering::Greater,
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        // same nonzero sign: compare aligned mantissas
        let d = self.sub(rhs);
        match d.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Bit length of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// floor(log2 |x|) for x != 0: the unique e with 2^e <= |x| < 2^{e+1}.
    pub fn log2_floor(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mantissa.bits() as i64 - 1
    }

    /// Round toward -inf so the result is an integer multiple of 2^-bits.
    /// Returns the rounded value; the error is in [0, 2^-bits).
    pub fn floor_to_bits(&self, bits: u32) -> Self {
        let target = -(bits as i64);
        if self.is_zero() || self.exp >= target {
            return self.clone();
        }
        let shift = (target - self.exp) as u64;
        let m = self.mantissa.div_floor(&(BigInt::one() << shift));
        Dyadic::new(m, target)
    }

    /// Round toward +inf to a multiple of 2^-bits.
    pub fn ceil_to_bits(&self, bits: u32) -> Self {
        self.neg().floor_to_bits(bits).neg()
    }

    /// floor to an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mantissa << self.exp as u64
        } else {
            self.mantissa.div_floor(&(BigInt::one() << (-self.exp) as u64))
        }
    }

    /// Nearest integer, ties toward +inf (floor(x + 1/2)).
    pub fn round_int(&self) -> BigInt {
        self.add(&Dyadic::pow2(-1)).floor_int()
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        self.sub(&Dyadic::from_int(n.clone()))
    }

    /// Enclosure of num/den as (center, radius) with radius <= 2^-bits.
    /// den must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> (Self, Self) {
        assert!(!den.is_zero(), "division by zero");
        let (num, den) = if den.is_negative() { (-num, -den.clone()) } else { (num.clone(), den.clone()) };
        // floor(num * 2^bits / den) -> lo; value in [lo, lo + 2^-bits]
        let scaled = &num << bits as u64;
        let q = scaled.div_floor(&den);
        let lo = Dyadic::new(q, -(bits as i64));
        let half_ulp = Dyadic::pow2(-(bits as i64 + 1));
        (lo.add(&half_ulp), half_ulp)
    }

    /// Nearest f64 (best effort; saturates on overflow).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        // keep <= 60 significant bits then scale
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            let m = &self.mantissa >> shift;
            (m, self.exp + shift as i64)
        } else {
            (self.mantissa.clone(), self.exp)
        };
        let mf: f64 = {
            let (sign, digits) = m.to_u64_digits();
            let mut v = 0.0f64;
            for d in digits.iter().rev() {
                v = v * 1.8446744073709552e19 + *d as f64;
            }
            if sign == Sign::Minus {
                v = -v;
            }
            v
        };
        mf * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal string with `sig` significant digits, round-to-nearest.
    /// Exact dyadic -> decimal conversion; deterministic output.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let a = self.abs();
        // decimal exponent estimate: |x| = m * 2^e, log10 ~ (bits+e)*log10(2)
        let l2 = a.log2_floor();
        let mut dec_exp = (l2 as f64 * std::f64::consts::LOG10_2).floor() as i64;
        // scale so that a * 10^(sig-1-dec_exp) is in [10^(sig-1), 10^sig)
        loop {
            let shift = sig as i64 - 1 - dec_exp;
            let scaled = a.scale_pow10(shift);
            let digits = scaled.round_int();
            let s = digits.to_string();
            let got = s.len() as i64;
            if got == sig as i64 {
                return format_decimal(neg, &s, dec_exp);
            }
            // rounding crossed a power of ten; adjust
            dec_exp += got - sig as i64;
        }
    }

    /// self * 10^k as an exact dyadic when k >= 0; rounded (66 guard bits,
    /// plus a half-ulp bound absorbed by caller's rounding) when k < 0.
    fn scale_pow10(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let p = BigInt::from(10u32).pow(k as u32);
            self.mul_int(&p)
        } else {
            let p = BigInt::from(10u32).pow((-k) as u32);
            let guard = self.mant_bits().max(64) as u32 + 64;
            let (c, _r) = Dyadic::from_ratio(&BigInt::one(), &p, guard);
            // |error| <= |self| * 2^-guard: below half an output ulp for
            // the sig sizes used here.
            self.mul(&c)
        }
    }
}

fn format_decimal(neg: bool, digits: &str, dec_exp: i64) -> String {
    let sign = if neg { "-" } else { "" };
    let n = digits.len() as i64;
    if dec_exp >= 0 && dec_exp < 18 {
        if dec_exp + 1 >= n {
            // integer with possible trailing zeros
            let zeros = (dec_exp + 1 - n) as usize;
            format!("{sign}{digits}{}", "0".repeat(zeros))
        } else {
            let (int, frac) = digits.split_at((dec_exp + 1) as usize);
            format!("{sign}{int}.{frac}")
        }
    } else if dec_exp < 0 && dec_exp > -6 {
        let zeros = (-dec_exp - 1) as usize;
        format!("{sign}0.{}{digits}", "0".repeat(zeros))
    } else {
        if digits.len() == 1 {
            format!("{sign}{digits}e{dec_exp}")
        } else {
            let (h, t) = digits.split_at(1);
            format!("{sign}{h}.{t}e{dec_exp}")
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({} * 2^{})", self.mantissa, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_val(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_val(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = d(3, -2); // 0.75
        let b = d(5, -3); // 0.625
        assert_eq!(a.add(&b), d(11, -3)); // 1.375
        assert_eq!(a.sub(&b), d(1, -3)); // 0.125
        assert_eq!(a.mul(&b), d(15, -5)); // 0.46875
        assert_eq!(a.cmp_val(&b), Ordering::Greater);
    }

    #[test]
    fn floor_and_round() {
        assert_eq!(d(5, -1).floor_int(), BigInt::from(2)); // 2.5 -> 2
        assert_eq!(d(5, -1).round_int(), BigInt::from(3)); // ties toward +inf
        assert_eq!(d(-5, -1).floor_int(), BigInt::from(-3));
        assert_eq!(d(-5, -1).round_int(), BigInt::from(-2));
        assert_eq!(d(7, -2).floor_to_bits(1), d(3, -1)); // 1.75 -> 1.5
    }

    #[test]
    fn ratio_enclosure_contains_value() {
        let (c, r) = Dyadic::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        // |c - 1/3| <= r: check 3c - 1 within 3r
        let err = c.mul_int(&BigInt::from(3)).sub(&Dyadic::one());
        assert!(err.abs().cmp_val(&r.mul_int(&BigInt::from(3))) != Ordering::Greater);
        assert!(r.cmp_val(&Dyadic::pow2(-64)) != Ordering::Greater);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(d(1, -1).to_decimal(3), "0.500");
        assert_eq!(d(1, 10).to_decimal(4), "1024");
        assert_eq!(d(-3, -2).to_decimal(2), "-0.75");
        let (c, _) = Dyadic::from_ratio(&BigInt::from(1), &BigInt::from(3), 128);
        assert!(c.to_decimal(10).starts_with("0.333333333"));
        assert_eq!(d(1, -40).to_decimal(3).len(), "9.09e-13".len());
    }

    #[test]
    fn to_f64_roundtrips_small_values() {
        assert_eq!(d(3, -2).to_f64(), 0.75);
        assert_eq!(d(-1, -1).to_f64(), -0.5);
        assert!((Dyadic::from_ratio(&BigInt::from(2), &BigInt::from(3), 80).0.to_f64() - 2.0 / 3.0).abs() < 1e-15);
    }
}
