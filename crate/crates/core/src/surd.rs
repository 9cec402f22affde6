//! Exact arithmetic in Q(√d): numbers (a + b√d)/c with integer a, b, c.
//!
//! Signs, comparisons against rationals, floors and nearest integers are
//! decided exactly by squaring with case analysis, so pipelines built from
//! a quadratic-surd alpha never hit a precision cap.

use crate::ball::CertifiedReal;
use crate::dyadic::Dyadic;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: BigInt,
    pub b: BigInt,
    /// Always positive after normalization.
    pub c: BigInt,
    /// Positive non-square radicand, fixed along a computation.
    pub d: BigInt,
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

impl Surd {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        assert!(d.is_positive() && !is_perfect_square(&d), "d must be a positive non-square");
        let mut s = Surd { a, b, c, d };
        s.normalize();
        s
    }

    pub fn from_rational(p: BigInt, q: BigInt, d: BigInt) -> Self {
        Surd::new(p, BigInt::zero(), q, d)
    }

    pub fn from_int(n: impl Into<BigInt>, d: BigInt) -> Self {
        Surd::from_rational(n.into(), BigInt::one(), d)
    }

    fn normalize(&mut self) {
        if self.c.is_negative() {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if g > BigInt::one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of (a + b√d) / c.
    pub fn signum(&self) -> i32 {
        let sa = sign_i(&self.a);
        let sb = sign_i(&self.b);
        let s = if sb == 0 {
            sa
        } else if sa == 0 {
            sb
        } else if sa == sb {
            sa
        } else {
            // compare a^2 against b^2 d; the larger magnitude wins
            let a2 = &self.a * &self.a;
            let b2d = &self.b * &self.b * &self.d;
            match a2.cmp(&b2d) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => 0, // impossible for non-square d with b != 0
            }
        };
        s * sign_i(&self.c)
    }

    pub fn neg(&self) -> Self {
        Surd { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        Surd::new(
            &self.a * &rhs.c + &rhs.a * &self.c,
            &self.b * &rhs.c + &rhs.b * &self.c,
            &self.c * &rhs.c,
            self.d.clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn add_rational(&self, p: &BigInt, q: &BigInt) -> Self {
        Surd::new(&self.a * q + p * &self.c, &self.b * q, &self.c * q, self.d.clone())
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        Surd { a: &self.a - n * &self.c, b: self.b.clone(), c: self.c.clone(), d: self.d.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        Surd::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &self.d,
            &self.a * &rhs.b + &self.b * &rhs.a,
            &self.c * &rhs.c,
            self.d.clone(),
        )
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Surd::new(&self.a * n, &self.b * n, self.c.clone(), self.d.clone())
    }

    pub fn mul_rational(&self, p: &BigInt, q: &BigInt) -> Self {
        Surd::new(&self.a * p, &self.b * p, &self.c * q, self.d.clone())
    }

    /// 1/x for x != 0: c(a - b√d) / (a² - b²d).
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero());
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        Surd::new(&self.c * &self.a, -(&self.c * &self.b), norm, self.d.clone())
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let mut acc = Surd::from_int(1, self.d.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn cmp(&self, rhs: &Self) -> Ordering {
        match self.sub(rhs).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn cmp_rational(&self, p: &BigInt, q: &BigInt) -> Ordering {
        debug_assert!(q.is_positive());
        // sign of (a q - p c) + b q √d (denominator c q > 0)
        let t = Surd {
            a: &self.a * q - p * &self.c,
            b: &self.b * q,
            c: BigInt::one(),
            d: self.d.clone(),
        };
        match t.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        // bracket b√d between consecutive integers
        let b2d = &self.b * &self.b * &self.d;
        let s = b2d.sqrt();
        let (lo, hi) = if self.b.is_negative() {
            // b√d in (-(s+1), -s]
            (-(&s + 1), -s)
        } else if self.b.is_zero() {
            (BigInt::zero(), BigInt::zero())
        } else {
            // b√d in [s, s+1)
            (s.clone(), s + 1)
        };
        let mut f = (&self.a + lo).div_floor(&self.c);
        let hi_f = (&self.a + hi).div_floor(&self.c);
        // at most one step between the bracketing candidates
        while f < hi_f {
            let next = &f + 1;
            if self.cmp_rational(&next, &BigInt::one()) != Ordering::Less {
                f = next;
            } else {
                break;
            }
        }
        f
    }

    /// Nearest integer with tie at x = n + 1/2 resolved upward, matching
    /// the [-1/2, 1/2) signed-fraction convention.
    pub fn nearest_int(&self) -> BigInt {
        // floor(x + 1/2)
        self.add_rational(&BigInt::one(), &BigInt::from(2)).floor()
    }

    /// Signed fractional part as an exact surd in [-1/2, 1/2), plus the
    /// integer part.
    pub fn signed_frac(&self) -> (Surd, BigInt) {
        let n = self.nearest_int();
        (self.sub_int(&n), n)
    }

    /// Certified enclosure with radius <= 2^-bits.
    pub fn to_ball(&self, bits: u32) -> CertifiedReal {
        let p = bits as i64 + 4;
        // s <= √d · 2^p < s+1
        let scaled = &self.d << (2 * p) as u64;
        let s = scaled.sqrt();
        let lo_num = |s: &BigInt| -> BigInt { (&self.a << p as u64) + &self.b * s };
        // numerator of (a + b√d) * 2^p, bracketed
        let (nlo, nhi) = if self.b.is_negative() {
            (lo_num(&(&s + 1)), lo_num(&s))
        } else {
            (lo_num(&s), lo_num(&(&s + 1)))
        };
        let den = &self.c << p as u64;
        let blo = CertifiedReal::from_ratio(&nlo, &den, bits + 4);
        let bhi = CertifiedReal::from_ratio(&nhi, &den, bits + 4);
        CertifiedReal::from_interval(blo.lo(), bhi.hi())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ball(80).to_f64()
    }
}

fn sign_i(n: &BigInt) -> i32 {
    if n.is_negative() {
        -1
    } else if n.is_zero() {
        0
    } else {
        1
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/{}", self.a, self.b, self.d, self.c)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ball(60).center().to_decimal(18))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Surd {
        Surd::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(2))
    }

    #[test]
    fn sign_by_squaring() {
        // 5√2 - 7 > 0 (since 50 > 49)
        let x = Surd::new(BigInt::from(-7), BigInt::from(5), BigInt::one(), BigInt::from(2));
        assert_eq!(x.signum(), 1);
        // 7 - 5√2 < 0
        assert_eq!(x.neg().signum(), -1);
        // 12√2 - 17 < 0 (288 < 289)
        let y = Surd::new(BigInt::from(-17), BigInt::from(12), BigInt::one(), BigInt::from(2));
        assert_eq!(y.signum(), -1);
    }

    #[test]
    fn floor_and_nearest() {
        let r2 = sqrt2();
        assert_eq!(r2.floor(), BigInt::from(1));
        assert_eq!(r2.nearest_int(), BigInt::from(1));
        let x = r2.mul_int(&BigInt::from(5)); // 7.071...
        assert_eq!(x.floor(), BigInt::from(7));
        assert_eq!(x.nearest_int(), BigInt::from(7));
        assert_eq!(r2.neg().floor(), BigInt::from(-2));
        // golden ratio (1+√5)/2: floor 1, nearest 2
        let phi = Surd::new(BigInt::one(), BigInt::one(), BigInt::from(2), BigInt::from(5));
        assert_eq!(phi.floor(), BigInt::from(1));
        assert_eq!(phi.nearest_int(), BigInt::from(2));
    }

    #[test]
    fn signed_frac_of_surd() {
        let (f, n) = sqrt2().mul_int(&BigInt::from(5)).signed_frac();
        assert_eq!(n, BigInt::from(7));
        assert_eq!(f.signum(), 1); // 5√2 - 7 = 0.0710...
        let ball = f.to_ball(64);
        let v = ball.to_f64();
        assert!((v - 0.07106781186547573).abs() < 1e-12);
    }

    #[test]
    fn recip_and_mul() {
        let r2 = sqrt2();
        let half = r2.recip().mul(&r2.recip()); // 1/2
        assert!(half.is_rational());
        assert_eq!(half.a, BigInt::one());
        assert_eq!(half.c, BigInt::from(2));
        let one = r2.mul(&r2.recip());
        assert_eq!(one.cmp_rational(&BigInt::one(), &BigInt::one()), Ordering::Equal);
    }

    #[test]
    fn ball_contains_truth() {
        let r2 = sqrt2();
        let ball = r2.to_ball(100);
        // 1.41421356237309504880... check against a scaled integer sqrt
        let s = (BigInt::from(2) << 200u32).sqrt();
        let approx = CertifiedReal::from_ratio(&s, &(BigInt::one() << 100u32), 120);
        assert!(ball.contains(approx.center()) || ball.lo().cmp_val(&approx.hi()) != Ordering::Greater);
        assert!(ball.radius().cmp_val(&Dyadic::pow2(-100)) != Ordering::Greater);
    }
}
