//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Floor square root: the `s` with `s^2 <= n < (s+1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Exact square root of `n` if it is a perfect square.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let s = isqrt(n);
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a non-negative rational if it is the square of a rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = exact_sqrt(x.numer().magnitude())?;
    let den = exact_sqrt(x.denom().magnitude())?;
    Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn rpow(x: &BigRational, e: u64) -> BigRational {
    let e = u32::try_from(e).expect("exponent fits in u32");
    BigRational::new_raw(x.numer().pow(e), x.denom().pow(e))
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of |x| for a nonzero rational.
pub fn ln_abs_rational(x: &BigRational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

pub fn to_biguint(x: &BigInt) -> Option<BigUint> {
    match x.sign() {
        Sign::Minus => None,
        _ => Some(x.magnitude().clone()),
    }
}

/// Ordinary least-squares slope of `ys` against `xs`; `None` with fewer than two points.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// `(-1)^k` as an `i32`.
pub fn sign_pow(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
