#![allow(dead_code)]

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Continued fraction of the rational `num / den` by Euclid.
pub fn rational_cf(mut num: BigUint, mut den: BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        out.push(q);
        num = den;
        den = r;
    }
    out
}

/// Partial quotients of `sqrt(D)` read off a decimal enclosure with `digits`
/// fractional digits: `s / 10^P <= sqrt(D) < (s+1) / 10^P`. Every quotient
/// shared by the expansions of both endpoints belongs to `sqrt(D)`; the last
/// shared one is dropped because the tail may still differ.
pub fn numeric_cf_prefix(d: u64, digits: u32) -> Vec<BigUint> {
    let scale = BigUint::from(10u32).pow(digits);
    let s = (BigUint::from(d) * &scale * &scale).sqrt();
    let lo = rational_cf(s.clone(), scale.clone());
    let hi = rational_cf(s + 1u32, scale);
    let mut common: Vec<BigUint> =
        lo.iter().zip(&hi).take_while(|(a, b)| a == b).map(|(a, _)| a.clone()).collect();
    common.pop();
    common
}

/// `[a0; period]` of `sqrt(D)` from the numeric oracle, found as the shortest
/// prefix ending in `2 a0`. `None` if the enclosure is too coarse.
pub fn numeric_period(d: u64, digits: u32) -> Option<(u64, Vec<u64>)> {
    let cf = numeric_cf_prefix(d, digits);
    let a0 = cf.first()?.to_u64()?;
    let end = cf.iter().skip(1).position(|a| a.to_u64() == Some(2 * a0))?;
    let word = cf[1..=end + 1].iter().map(|a| a.to_u64().unwrap()).collect();
    Some((a0, word))
}

/// Every `(X, Y)` with `1 <= Y <= y_max`, `X >= 0` and `|X^2 - D Y^2| < C`,
/// by direct enumeration, sorted by `(Y, X)`.
pub fn brute_pell(d: u64, c: u64, y_max: u64) -> Vec<(u64, u64, i64)> {
    let mut out = Vec::new();
    for y in 1..=y_max {
        let t = (d * y * y) as i128;
        let lo = (t - c as i128 + 1).max(0) as u128;
        let hi = (t + c as i128 - 1) as u128;
        let mut x = (lo as f64).sqrt() as u128;
        while x > 0 && x * x >= lo {
            x -= 1;
        }
        while x * x <= hi {
            if x * x >= lo {
                out.push((x as u64, y, (x * x) as i64 - t as i64));
            }
            x += 1;
        }
    }
    out
}

pub fn is_square(d: u64) -> bool {
    let s = (d as f64).sqrt() as u64;
    (s.saturating_sub(1)..=s + 1).any(|t| t * t == d)
}
