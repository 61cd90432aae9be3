//! Growth measurements along a family `D = f(n)`.
//!
//! Three statistics, all computed from exact integers:
//!
//! - the least `Y` with `|X^2 - f(n) Y^2| < C` (it should grow exponentially
//!   in `n` for forms satisfying Hypothesis (H));
//! - the reduced denominator of `f(n) / b^n`, compared against `2^(n/2)`;
//! - a profile of partial quotients and approximation exponents of the
//!   convergents of `sqrt(f(n))` below `exp(c n)`.
//!
//! The constants in the underlying growth statements are ineffective, so the
//! outputs here are slopes and profiles, never claimed constants.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_sqrt, least_squares_slope, ln_biguint, to_biguint};
use crate::error::{Error, Result};
use crate::expansion::hypothesis_h_decide;
use crate::form::PowerSumForm;
use crate::surd::{convergent_stream, period_length, PellSolution};

/// Default size budget for convergent denominators, in decimal digits.
pub const DEFAULT_DIGIT_BUDGET: u64 = 100_000;

/// Bits needed to hold a number with `digits` decimal digits.
pub fn digit_budget_bits(digits: u64) -> u64 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64
}

/// Search for `(X, Y)` with `|X^2 - D Y^2| < C` and `Y <= y_limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellQuery {
    pub radicand: BigUint,
    pub bound: BigUint,
    pub y_limit: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellScan {
    pub solutions: Vec<PellSolution>,
    /// `C <= sqrt(D)`: every solution is a multiple of a convergent, so the list is complete.
    pub complete: bool,
}

impl PellQuery {
    pub fn new(radicand: impl Into<BigUint>, bound: impl Into<BigUint>, y_limit: impl Into<BigUint>) -> Self {
        PellQuery {
            radicand: radicand.into(),
            bound: bound.into(),
            y_limit: y_limit.into(),
        }
    }

    pub fn is_complete(&self) -> bool {
        &self.bound * &self.bound <= self.radicand
    }
}

/// All `(X, Y)`, `1 <= Y <= y_limit`, with `|X^2 - D Y^2| < C`, sorted by `Y`.
///
/// Primitive solutions come from convergents; a convergent with norm `v`
/// also contributes its multiples `(g p, g q)` while `g^2 |v| < C`.
pub fn pell_below_bound(query: &PellQuery) -> Result<PellScan> {
    if query.bound.is_zero() {
        return Err(Error::InvalidArgument("bound C must be at least 1".into()));
    }
    let bound = BigInt::from(query.bound.clone());
    let mut out = Vec::new();
    for step in convergent_stream(&query.radicand)? {
        let c = step.convergent;
        if c.q > query.y_limit {
            break;
        }
        let norm = step.norm.abs();
        let mut g = 1u64;
        loop {
            let scaled = &norm * BigInt::from(g * g);
            let y = &c.q * g;
            if scaled >= bound || y > query.y_limit {
                break;
            }
            let sol = PellSolution::new(&query.radicand, &c.p * g, y);
            debug_assert_eq!(sol.value.abs(), scaled);
            out.push(sol);
            g += 1;
        }
    }
    out.sort_by(|a, b| a.y.cmp(&b.y).then(a.x.cmp(&b.x)));
    Ok(PellScan {
        solutions: out,
        complete: query.is_complete(),
    })
}

/// Least `Y` for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PellGrowthRecord {
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub radicand: BigUint,
    pub solution: Option<PellSolution>,
    /// `ln Y_min`.
    pub statistic: Option<f64>,
    pub complete: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PellGrowth {
    pub records: Vec<PellGrowthRecord>,
    /// Least-squares slope of `ln Y_min(n)` against `n`.
    pub slope: Option<f64>,
    /// Hypothesis (H) holds for the form; without it the slope may be 0.
    pub hypothesis_holds: bool,
}

fn family_value(f: &PowerSumForm, n: u64) -> Result<BigUint> {
    let v = f.eval_integer(n)?;
    to_biguint(&v)
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::InvalidArgument(format!("f({n}) = {v} is not positive")))
}

fn min_y_one(f: &PowerSumForm, bound: &BigUint, n: u64, max_bits: u64) -> Result<PellGrowthRecord> {
    let radicand = family_value(f, n)?;
    let mut rec = PellGrowthRecord {
        n,
        radicand: radicand.clone(),
        solution: None,
        statistic: None,
        complete: bound * bound <= radicand,
        note: None,
    };
    if exact_sqrt(&radicand).is_some() {
        rec.note = Some("square".into());
        return Ok(rec);
    }
    let bound_i = BigInt::from(bound.clone());
    for step in convergent_stream(&radicand)? {
        if step.convergent.q.bits() > max_bits {
            rec.note = Some("digit-budget".into());
            return Ok(rec);
        }
        if step.norm.abs() < bound_i {
            let c = step.convergent;
            rec.statistic = Some(ln_biguint(&c.q));
            rec.solution = Some(PellSolution::new(&radicand, c.p, c.q));
            return Ok(rec);
        }
    }
    unreachable!("convergent stream is infinite")
}

/// For each `n`, the least `Y` with `|X^2 - f(n) Y^2| < C`, and the slope of `ln Y` in `n`.
pub fn min_y_growth(
    f: &PowerSumForm,
    bound: u64,
    n_range: RangeInclusive<u64>,
    digit_budget: u64,
) -> Result<PellGrowth> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound C must be at least 1".into()));
    }
    let hypothesis_holds = hypothesis_h_decide(f)?.verdict.holds();
    let bound = BigUint::from(bound);
    let max_bits = digit_budget_bits(digit_budget);
    let records = n_range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| min_y_one(f, &bound, n, max_bits))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.statistic.map(|s| (r.n as f64, s)))
        .collect();
    Ok(PellGrowth {
        slope: least_squares_slope(&points),
        records,
        hypothesis_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenominatorRecord {
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub denominator: BigUint,
    /// `ln` of the denominator.
    pub statistic: f64,
    /// `n ln 2 / 2`.
    pub threshold: f64,
    /// Denominator below `2^(n/2)`, decided exactly as `den^2 < 2^n`.
    pub flagged: bool,
}

/// Reduced denominator of `f(n) / b^n` for each `n`.
pub fn denominator_growth(
    f: &PowerSumForm,
    b: u64,
    n_range: RangeInclusive<u64>,
) -> Result<Vec<DenominatorRecord>> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("b must be at least 2, got {b}")));
    }
    if !f.class().in_e_z() {
        return Err(Error::NonIntegralBases);
    }
    let b = BigInt::from(b);
    Ok(n_range
        .map(|n| {
            let e = u32::try_from(n).expect("n fits in u32");
            let x = f.eval_exact(n) / BigRational::from_integer(b.pow(e));
            let denominator = x.denom().magnitude().clone();
            DenominatorRecord {
                n,
                statistic: ln_biguint(&denominator),
                threshold: n as f64 * std::f64::consts::LN_2 / 2.0,
                flagged: &denominator * &denominator < (BigUint::one() << n),
                denominator,
            }
        })
        .collect())
}

/// `b` divides every root of `f`, the case where denominators stay bounded.
pub fn divides_every_root(f: &PowerSumForm, b: u64) -> bool {
    let b = BigInt::from(b);
    f.terms()
        .iter()
        .all(|t| t.base.denom().is_one() && (t.base.numer() % &b).is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileEntry {
    pub j: u64,
    /// `a_{j+1}`.
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub next_quotient: BigUint,
    /// `ln q_j`.
    pub ln_q: f64,
    /// `ln(1/|sqrt(D) - p_j/q_j|) / ln q_j`; absent while `q_j = 1`.
    pub exponent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub radicand: BigUint,
    pub entries: Vec<ProfileEntry>,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub max_partial_quotient: BigUint,
    /// The scan stopped at `q_j >= exp(c n)` rather than at the end of the first period.
    pub hit_q_bound: bool,
}

/// Partial quotients `a_{j+1}` for convergents with `q_j < exp(c n)`, within
/// the first period. `None` when `f(n)` is a square. Observational only.
pub fn partial_quotient_profile(f: &PowerSumForm, n: u64, c: f64) -> Result<Option<Profile>> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let radicand = family_value(f, n)?;
    if exact_sqrt(&radicand).is_some() {
        return Ok(None);
    }
    let r = period_length(&radicand)?.r;
    let ln_root = ln_biguint(&radicand) / 2.0;
    let root = ln_root.exp();
    let limit = c * n as f64;
    let mut entries = Vec::new();
    let mut max_a = BigUint::zero();
    let mut hit_q_bound = false;
    for step in convergent_stream(&radicand)?.take(r as usize) {
        let cv = &step.convergent;
        let ln_q = ln_biguint(&cv.q);
        if ln_q >= limit {
            hit_q_bound = true;
            break;
        }
        let exponent = (!cv.q.is_one()).then(|| {
            let ratio = BigRational::new(cv.p.clone().into(), cv.q.clone().into())
                .to_f64()
                .unwrap_or(root);
            let ln_norm = ln_biguint(step.norm.magnitude());
            (2.0 * ln_q + (root + ratio).ln() - ln_norm) / ln_q
        });
        if step.next_quotient > max_a {
            max_a = step.next_quotient.clone();
        }
        entries.push(ProfileEntry {
            j: cv.j,
            next_quotient: step.next_quotient,
            ln_q,
            exponent,
        });
    }
    Ok(Some(Profile {
        n,
        radicand,
        entries,
        max_partial_quotient: max_a,
        hit_q_bound,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(s: &str) -> PowerSumForm {
        s.parse().unwrap()
    }

    fn triples(scan: &PellScan) -> Vec<(u64, u64, i64)> {
        scan.solutions
            .iter()
            .map(|s| (s.x.to_u64().unwrap(), s.y.to_u64().unwrap(), s.value.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn pell_scan_examples() {
        let s = pell_below_bound(&PellQuery::new(33u32, 2u32, 10u32)).unwrap();
        assert_eq!(triples(&s), [(23, 4, 1)]);
        assert!(s.complete);
        let s = pell_below_bound(&PellQuery::new(33u32, 4u32, 10u32)).unwrap();
        assert_eq!(triples(&s), [(6, 1, 3), (23, 4, 1)]);
        let s = pell_below_bound(&PellQuery::new(2u32, 2u32, 5u32)).unwrap();
        assert_eq!(triples(&s), [(1, 1, -1), (3, 2, 1), (7, 5, -1)]);
        assert!(!s.complete);
    }

    #[test]
    fn pell_scan_includes_multiples() {
        let s = pell_below_bound(&PellQuery::new(33u32, 5u32, 10u32)).unwrap();
        assert_eq!(triples(&s), [(6, 1, 3), (23, 4, 1), (46, 8, 4)]);
    }

    #[test]
    fn pell_scan_errors() {
        assert!(matches!(
            pell_below_bound(&PellQuery::new(49u32, 2u32, 10u32)),
            Err(Error::SquareInput(_))
        ));
        assert!(matches!(
            pell_below_bound(&PellQuery::new(7u32, 0u32, 10u32)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn min_y_examples() {
        let g = min_y_growth(&f("2*4^n + 1"), 2, 1..=2, DEFAULT_DIGIT_BUDGET).unwrap();
        assert_eq!(g.records[0].note.as_deref(), Some("square"));
        assert!(g.records[0].solution.is_none());
        let s = g.records[1].solution.as_ref().unwrap();
        assert_eq!(s.y, BigUint::from(4u32));
        assert!(g.hypothesis_holds);

        let g = min_y_growth(&f("4^n + 1"), 2, 1..=12, DEFAULT_DIGIT_BUDGET).unwrap();
        assert!(!g.hypothesis_holds);
        for r in &g.records {
            let s = r.solution.as_ref().unwrap();
            assert!(s.y.is_one());
            assert_eq!(s.x, BigUint::one() << r.n);
            assert_eq!(s.value, BigInt::from(-1));
        }
        assert_eq!(g.slope, Some(0.0));
    }

    #[test]
    fn min_y_respects_digit_budget() {
        let g = min_y_growth(&f("2*4^n + 1"), 2, 9..=9, 2).unwrap();
        assert_eq!(g.records[0].note.as_deref(), Some("digit-budget"));
    }

    #[test]
    fn denominator_examples() {
        let recs = denominator_growth(&f("3^n + 1"), 2, 1..=4).unwrap();
        let dens: Vec<u64> = recs.iter().map(|r| r.denominator.to_u64().unwrap()).collect();
        assert_eq!(dens, [1, 2, 2, 8]);
        assert!(recs[0].flagged);
        let recs = denominator_growth(&f("2*4^n"), 2, 1..=30).unwrap();
        assert!(recs.iter().all(|r| r.denominator.is_one()));
        assert!(divides_every_root(&f("2*4^n"), 2));
        assert!(!divides_every_root(&f("3^n + 1"), 2));
        assert!(denominator_growth(&f("3^n"), 1, 1..=2).is_err());
        assert!(denominator_growth(&f("1/2*3^n"), 2, 1..=2).is_err());
    }

    #[test]
    fn denominator_valuation_pattern() {
        for r in denominator_growth(&f("3^n + 1"), 2, 2..=80).unwrap() {
            let v = if r.n % 2 == 1 { 2 } else { 1 };
            assert_eq!(r.denominator, BigUint::one() << (r.n - v), "n={}", r.n);
        }
    }

    #[test]
    fn profile_examples() {
        let big_c = 1e6;
        let p = partial_quotient_profile(&f("2*4^n + 1"), 3, big_c).unwrap().unwrap();
        assert_eq!(p.max_partial_quotient, BigUint::from(22u32));
        assert_eq!(p.entries.len(), 10);
        assert!(!p.hit_q_bound);
        let p = partial_quotient_profile(&f("2*4^n + 1"), 2, big_c).unwrap().unwrap();
        assert_eq!(p.max_partial_quotient, BigUint::from(10u32));
        let p = partial_quotient_profile(&f("4^n + 1"), 3, big_c).unwrap().unwrap();
        assert_eq!(p.max_partial_quotient, BigUint::from(16u32));
        assert!(partial_quotient_profile(&f("2*4^n + 1"), 1, 1.0).unwrap().is_none());
        for e in &partial_quotient_profile(&f("2*4^n + 1"), 6, big_c).unwrap().unwrap().entries {
            if let Some(x) = e.exponent {
                assert!(x > 2.0, "every convergent beats 1/q^2: {x}");
            }
        }
    }

    #[test]
    fn profile_stops_at_q_bound() {
        let p = partial_quotient_profile(&f("2*4^n + 1"), 8, 0.3).unwrap().unwrap();
        assert!(p.hit_q_bound);
        assert!(p.entries.iter().all(|e| e.ln_q < 0.3 * 8.0));
    }
}
