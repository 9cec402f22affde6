//! Certified enclosures: a value is carried as `center ± radius` with the
//! guarantee that the exact quantity lies inside the interval. All
//! operations return enclosures of the exact result.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;
use std::fmt;

/// Default starting precision for escalation pipelines.
pub const START_BITS: u32 = 64;
/// Default precision cap; override with `OSCDENSE_MAX_BITS` or the
/// max_bits arguments threaded through the public operations.
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// Effective precision cap: environment override or the default.
pub fn max_bits_env() -> u32 {
    std::env::var("OSCDENSE_MAX_BITS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_BITS)
}

#[derive(Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    center: Dyadic,
    radius: Dyadic, // >= 0
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertSign {
    Negative,
    Zero,
    Positive,
}

impl CertSign {
    pub fn as_i32(self) -> i32 {
        match self {
            CertSign::Negative => -1,
            CertSign::Zero => 0,
            CertSign::Positive => 1,
        }
    }
}

impl CertifiedReal {
    pub fn new(center: Dyadic, radius: Dyadic) -> Self {
        debug_assert!(!radius.is_negative());
        CertifiedReal { center, radius }
    }

    pub fn exact(center: Dyadic) -> Self {
        CertifiedReal { center, radius: Dyadic::zero() }
    }

    pub fn exact_int(n: impl Into<BigInt>) -> Self {
        CertifiedReal::exact(Dyadic::from_int(n))
    }

    pub fn zero() -> Self {
        CertifiedReal::exact(Dyadic::zero())
    }

    /// Enclosure of p/q with radius <= 2^-bits.
    pub fn from_ratio(p: &BigInt, q: &BigInt, bits: u32) -> Self {
        let (c, r) = Dyadic::from_ratio(p, q, bits);
        CertifiedReal::new(c, r)
    }

    pub fn from_interval(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_val(&hi) != Ordering::Greater);
        let center = lo.add(&hi).half();
        let radius = hi.sub(&lo).half();
        CertifiedReal::new(center, radius)
    }

    pub fn center(&self) -> &Dyadic {
        &self.center
    }

    pub fn radius(&self) -> &Dyadic {
        &self.radius
    }

    pub fn lo(&self) -> Dyadic {
        self.center.sub(&self.radius)
    }

    pub fn hi(&self) -> Dyadic {
        self.center.add(&self.radius)
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CertifiedReal::new(self.center.add(&rhs.center), self.radius.add(&rhs.radius))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        CertifiedReal::new(self.center.sub(&rhs.center), self.radius.add(&rhs.radius))
    }

    pub fn neg(&self) -> Self {
        CertifiedReal::new(self.center.neg(), self.radius.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // |xy - cx cy| <= |cx| ry + |cy| rx + rx ry
        let c = self.center.mul(&rhs.center);
        let r = self
            .center
            .abs()
            .mul(&rhs.radius)
            .add(&rhs.center.abs().mul(&self.radius))
            .add(&self.radius.mul(&rhs.radius));
        CertifiedReal::new(c, r)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        CertifiedReal::new(self.center.mul_int(n), self.radius.mul_int(&n.abs()))
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        CertifiedReal::new(self.center.add(&Dyadic::from_int(n.clone())), self.radius.clone())
    }

    pub fn abs(&self) -> Self {
        let lo = self.lo();
        let hi = self.hi();
        if !lo.is_negative() {
            self.clone()
        } else if !hi.is_positive() {
            self.neg()
        } else {
            // straddles zero: |x| in [0, max(|lo|, hi)]
            let m = if lo.abs().cmp_val(&hi) == Ordering::Greater { lo.abs() } else { hi };
            CertifiedReal::from_interval(Dyadic::zero(), m)
        }
    }

    /// Enclosure of 1/x; requires the interval to exclude zero.
    pub fn recip(&self, bits: u32) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::PrecisionCapExceeded { max_bits: bits });
        }
        let lo = self.lo();
        let hi = self.hi();
        let inv = |d: &Dyadic, up: bool| -> Dyadic {
            // 1 / (m 2^e) = (2^bits / m) 2^(-e-bits), directed rounding
            let one = BigInt::from(1) << (bits as u64 + d.mant_bits());
            let q = if up {
                num_integer::Integer::div_ceil(&one, d.mantissa())
            } else {
                num_integer::Integer::div_floor(&one, d.mantissa())
            };
            Dyadic::new(q, -(d.exp() + bits as i64 + d.mant_bits() as i64))
        };
        // x > 0: 1/hi <= 1/x <= 1/lo; x < 0 symmetric
        let (a, b) = (inv(&hi, false), inv(&lo, true));
        let (lo2, hi2) = if a.cmp_val(&b) == Ordering::Greater { (b, a) } else { (a, b) };
        Ok(CertifiedReal::from_interval(lo2, hi2))
    }

    /// Compress the center mantissa to about `bits` bits, inflating the
    /// radius accordingly. Keeps long scan pipelines cheap.
    pub fn round_to(&self, bits: u32) -> Self {
        if self.center.is_zero() || self.center.mant_bits() <= bits as u64 + 2 {
            return self.clone();
        }
        let scale = self.center.log2_floor() - bits as i64;
        let keep = (-scale).max(i64::MIN + 1);
        if keep <= 0 {
            return self.clone();
        }
        let lo = self.lo().floor_to_bits(keep as u32);
        let hi = self.hi().ceil_to_bits(keep as u32);
        CertifiedReal::from_interval(lo, hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo().is_positive() && !self.hi().is_negative()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo().cmp_val(x) != Ordering::Greater && self.hi().cmp_val(x) != Ordering::Less
    }

    /// Certified sign: Some(..) when the interval excludes zero or is the
    /// exact zero; None when ambiguous.
    pub fn sign(&self) -> Option<CertSign> {
        if self.center.is_zero() && self.radius.is_zero() {
            return Some(CertSign::Zero);
        }
        if self.lo().is_positive() {
            Some(CertSign::Positive)
        } else if self.hi().is_negative() {
            Some(CertSign::Negative)
        } else {
            None
        }
    }

    /// Certified strict comparison: Some(true) iff self < rhs certainly.
    pub fn lt(&self, rhs: &Self) -> Option<bool> {
        if self.hi().cmp_val(&rhs.lo()) == Ordering::Less {
            Some(true)
        } else if self.lo().cmp_val(&rhs.hi()) != Ordering::Less {
            Some(false)
        } else {
            None
        }
    }

    pub fn le(&self, rhs: &Self) -> Option<bool> {
        if self.hi().cmp_val(&rhs.lo()) != Ordering::Greater {
            Some(true)
        } else if self.lo().cmp_val(&rhs.hi()) == Ordering::Greater {
            Some(false)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.center.to_f64()
    }

    /// Deterministic decimal rendering "center ± radius".
    pub fn to_decimal_pair(&self, sig: usize) -> (String, String) {
        let c = self.center.to_decimal(sig);
        let r = if self.radius.is_zero() { "0".to_string() } else { self.radius.ceil_to_bits(200).to_decimal(2) };
        (c, r)
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, r) = self.to_decimal_pair(20);
        write!(f, "{c} ± {r}")
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, r) = self.to_decimal_pair(20);
        write!(f, "{c} ± {r}")
    }
}

/// Signed fractional part `⟨x⟩₂ ∈ [-1/2, 1/2)` together with its certified
/// sign. `x - value` is an integer.
#[derive(Clone, Debug)]
pub struct SignedFrac {
    pub value: CertifiedReal,
    pub sign: CertSign,
    /// The integer n with x = n + value.
    pub integer_part: BigInt,
}

/// Reduce an enclosure of x to its signed fractional part. Fails when the
/// enclosure straddles a half-integer (caller refines precision), except
/// for exact half-integers which map to -1/2 by the half-open convention.
pub fn signed_frac(x: &CertifiedReal) -> Result<SignedFrac> {
    let half = Dyadic::pow2(-1);
    // candidate integer: round center to nearest
    let n = x.center().round_int();
    let shifted = x.add_int(&(-&n));
    // shifted should lie within [-1/2, 1/2); check certifiably
    let lo = shifted.lo();
    let hi = shifted.hi();
    let neg_half = half.neg();
    if x.is_exact() {
        // exact dyadic input: decide exactly, including the boundary
        let v = shifted.center().clone();
        let (v, n) = if v.cmp_val(&half) != Ordering::Less {
            (v.sub(&Dyadic::one()), n + 1)
        } else if v.cmp_val(&neg_half) == Ordering::Less {
            (v.add(&Dyadic::one()), n - 1)
        } else {
            (v, n)
        };
        let sign = match v.signum() {
            -1 => CertSign::Negative,
            0 => CertSign::Zero,
            _ => CertSign::Positive,
        };
        return Ok(SignedFrac { value: CertifiedReal::exact(v), sign, integer_part: n });
    }
    if lo.cmp_val(&neg_half) != Ordering::Less && hi.cmp_val(&half) == Ordering::Less {
        let sign = match shifted.sign() {
            Some(CertSign::Positive) => CertSign::Positive,
            Some(CertSign::Negative) => CertSign::Negative,
            Some(CertSign::Zero) => CertSign::Zero,
            None => {
                return Err(Error::AmbiguousAtHalfInteger { bits: 0 });
            }
        };
        return Ok(SignedFrac { value: shifted, sign, integer_part: n });
    }
    Err(Error::AmbiguousAtHalfInteger { bits: x.radius().mant_bits() as u32 })
}

/// Distance to the nearest integer ‖x‖ as an enclosure in [0, 1/2];
/// well-defined even when the enclosure straddles a half-integer.
pub fn dist_nearest_int(x: &CertifiedReal) -> CertifiedReal {
    match signed_frac(x) {
        Ok(sf) => sf.value.abs(),
        Err(_) => {
            // near a half-integer: ‖x‖ in [1/2 - d, 1/2] where d bounds the
            // distance from the half-integer line
            let half = Dyadic::pow2(-1);
            let n = x.center().round_int();
            let shifted = x.add_int(&(-&n));
            let d_lo = shifted.abs().lo();
            let lo = if d_lo.cmp_val(&half) == Ordering::Greater {
                Dyadic::one().sub(&d_lo)
            } else {
                d_lo
            };
            let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
            CertifiedReal::from_interval(lo, half)
        }
    }
}

/// Precision-escalation driver: calls `f` at doubling precision starting
/// from `start` until it returns a certified answer, erroring at the cap.
pub fn refine<T>(start: u32, max_bits: u32, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
    let mut bits = start.max(8);
    loop {
        match f(bits)? {
            Some(t) => return Ok(t),
            None => {
                if bits >= max_bits {
                    return Err(Error::PrecisionCapExceeded { max_bits });
                }
                bits = (bits * 2).min(max_bits);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn signed_frac_trivial_cases() {
        // 0.25 -> +0.25
        let sf = signed_frac(&CertifiedReal::exact(d(1, -2))).unwrap();
        assert_eq!(sf.value.center(), &d(1, -2));
        assert_eq!(sf.sign, CertSign::Positive);
        // exact 0.5 -> -0.5 by the half-open convention
        let sf = signed_frac(&CertifiedReal::exact(d(1, -1))).unwrap();
        assert_eq!(sf.value.center(), &d(-1, -1));
        assert_eq!(sf.sign, CertSign::Negative);
        assert_eq!(sf.integer_part, BigInt::from(1));
        // 3.75 -> -0.25
        let sf = signed_frac(&CertifiedReal::exact(d(15, -2))).unwrap();
        assert_eq!(sf.value.center(), &d(-1, -2));
        assert_eq!(sf.sign, CertSign::Negative);
        assert_eq!(sf.integer_part, BigInt::from(4));
    }

    #[test]
    fn signed_frac_idempotent() {
        let x = CertifiedReal::exact(d(13, -3)); // 1.625 -> -0.375
        let sf = signed_frac(&x).unwrap();
        let sf2 = signed_frac(&sf.value).unwrap();
        assert_eq!(sf.value.center(), sf2.value.center());
    }

    #[test]
    fn signed_frac_ambiguous_ball_near_half() {
        let x = CertifiedReal::new(d(1, -1), d(1, -20)); // 0.5 ± tiny
        assert!(signed_frac(&x).is_err());
    }

    #[test]
    fn dist_nearest_int_cases() {
        let v = dist_nearest_int(&CertifiedReal::exact(d(1, -1)));
        assert!(v.contains(&d(1, -1)));
        let v = dist_nearest_int(&CertifiedReal::exact(d(1, 0)));
        assert!(v.contains(&Dyadic::zero()) && v.is_exact());
        // near half-integer with a fat ball still returns a valid interval
        let v = dist_nearest_int(&CertifiedReal::new(d(1, -1), d(1, -10)));
        assert!(v.hi().cmp_val(&d(1, -1)) != Ordering::Greater);
    }

    #[test]
    fn mul_encloses_product() {
        let a = CertifiedReal::new(d(3, -1), d(1, -10));
        let b = CertifiedReal::new(d(-7, -2), d(1, -12));
        let p = a.mul(&b);
        // exact product of centers inside
        assert!(p.contains(&d(3, -1).mul(&d(-7, -2))));
        // extreme corner products inside
        let corner = a.hi().mul(&b.lo());
        assert!(p.contains(&corner));
    }

    #[test]
    fn recip_encloses() {
        let a = CertifiedReal::new(d(3, 0), d(1, -8));
        let r = a.recip(64).unwrap();
        let third = CertifiedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 100);
        assert!(r.contains(third.center()));
        assert!(CertifiedReal::new(Dyadic::zero(), d(1, 0)).recip(64).is_err());
    }

    #[test]
    fn refine_escalates_and_caps() {
        let mut calls = 0;
        let r: Result<u32> = refine(64, 256, |bits| {
            calls += 1;
            if bits >= 200 {
                Ok(Some(bits))
            } else {
                Ok(None)
            }
        });
        assert_eq!(r.unwrap(), 256);
        assert_eq!(calls, 3);
        let r: Result<u32> = refine(64, 128, |_| Ok(None));
        assert!(matches!(r, Err(Error::PrecisionCapExceeded { max_bits: 128 })));
    }
}
