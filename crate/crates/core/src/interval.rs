//! Dyadic interval arithmetic for certified comparisons involving square roots.
//!
//! An [`Interval`] encloses a real number between `lo / 2^scale` and
//! `hi / 2^scale`. Every operation rounds outward, so a comparison that
//! succeeds on enclosures holds for the exact values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::isqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

fn floor_shr(x: BigInt, s: u32) -> BigInt {
    // BigInt's shift rounds toward negative infinity.
    x >> s
}

fn ceil_shr(x: BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(n, d)
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-n, d)
}

impl Interval {
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn from_rational(x: &BigRational, scale: u32) -> Self {
        let n = x.numer() << scale;
        Interval {
            lo: floor_div(&n, x.denom()),
            hi: ceil_div(&n, x.denom()),
            scale,
        }
    }

    /// Enclosure of `sqrt(x)` for a non-negative rational `x`.
    pub fn sqrt(x: &BigRational, scale: u32) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        let n = x.numer() << (2 * scale);
        let lo2 = floor_div(&n, x.denom());
        let hi2 = ceil_div(&n, x.denom());
        let lo = isqrt(lo2.magnitude());
        let mut hi = isqrt(hi2.magnitude());
        if &hi * &hi < *hi2.magnitude() {
            hi += 1u32;
        }
        Interval {
            lo: lo.into(),
            hi: hi.into(),
            scale,
        }
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::from(1) << self.scale)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::from(1) << self.scale)
    }

    pub fn width(&self) -> BigRational {
        self.upper() - self.lower()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.scale, other.scale, "interval scales differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            scale: self.scale,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            scale: self.scale,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval {
            lo: floor_shr(lo, self.scale),
            hi: ceil_shr(hi, self.scale),
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Interval {
                lo: -&self.hi,
                hi: -&self.lo,
                scale: self.scale,
            }
        } else {
            Interval {
                lo: BigInt::zero(),
                hi: self.hi.clone().max(-&self.lo),
                scale: self.scale,
            }
        }
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.check(other);
        self.hi < other.lo
    }

    /// Certified ordering, or `None` when the enclosures overlap.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.certainly_lt(other) {
            Some(Ordering::Less)
        } else if other.certainly_lt(self) {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Rational bounds on `self / other` for strictly positive enclosures.
    pub fn ratio_bounds(&self, other: &Self) -> Option<(BigRational, BigRational)> {
        self.check(other);
        if !self.is_positive() || !other.is_positive() {
            return None;
        }
        Some((
            BigRational::new(self.lo.clone(), other.hi.clone()),
            BigRational::new(self.hi.clone(), other.lo.clone()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn sqrt_two_encloses() {
        let s = Interval::sqrt(&q(2, 1), 64);
        let lo = s.lower();
        let hi = s.upper();
        assert!(&lo * &lo <= q(2, 1));
        assert!(&hi * &hi >= q(2, 1));
        assert!(s.width() <= q(1, 1) / BigRational::from_integer(BigInt::from(1) << 63));
    }

    #[test]
    fn exact_square_root_is_tight() {
        let s = Interval::sqrt(&q(9, 4), 10);
        assert_eq!(s.lower(), q(3, 2));
        assert_eq!(s.upper(), q(3, 2));
    }

    #[test]
    fn outward_rounding_keeps_enclosure() {
        let a = Interval::from_rational(&q(-1, 3), 20);
        let b = Interval::from_rational(&q(5, 7), 20);
        let p = a.mul(&b);
        assert!(p.lower() <= q(-5, 21) && q(-5, 21) <= p.upper());
        let d = a.sub(&b).abs();
        let exact = q(22, 21);
        assert!(d.lower() <= exact && exact <= d.upper());
    }

    #[test]
    fn comparisons() {
        let a = Interval::sqrt(&q(2, 1), 40);
        let b = Interval::from_rational(&q(142, 100), 40);
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        let c = Interval::from_rational(&q(1414213562, 1000000000), 8);
        let d = Interval::sqrt(&q(2, 1), 8);
        assert_eq!(c.compare(&d), None);
    }

    #[test]
    fn abs_straddling_zero() {
        let a = Interval::from_rational(&q(1, 3), 16).sub(&Interval::from_rational(&q(1, 2), 16));
        let m = Interval::from_rational(&q(1, 4), 16).sub(&Interval::from_rational(&q(1, 4), 16));
        assert!(a.abs().is_positive());
        assert_eq!(m.abs().lower(), q(0, 1));
    }
}
