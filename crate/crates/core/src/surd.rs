//! Continued fractions of `sqrt(D)`.
//!
//! The expansion is produced by the classical `(m, d, a)` recurrence
//!
//! ```text
//! m' = d*a - m,   d' = (D - m'^2) / d,   a' = floor((a0 + m') / d')
//! ```
//!
//! which only ever divides exactly and keeps `O(1)` state. The period of
//! `sqrt(D) = [a0; a1, ..., a_{r-1}, 2*a0]` ends at the first step `k >= 1`
//! with `d_k = 1`. From the state we also get the norm of every convergent
//! for free: `p_j^2 - D q_j^2 = (-1)^(j+1) d_(j+1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{exact_sqrt, isqrt as floor_sqrt, sign_pow};
use crate::error::{Error, Result};

pub const DEFAULT_WORD_CAP: usize = 1_000_000;
/// Largest period for which the fundamental solution is materialized.
pub const DEFAULT_PELL_PERIOD_CAP: u64 = 100_000;

/// Floor square root: `s` with `s^2 <= n < (s+1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    floor_sqrt(n)
}

fn check_radicand(d: &BigUint) -> Result<BigUint> {
    if d.is_zero() {
        return Err(Error::InvalidArgument("radicand must be positive".into()));
    }
    if exact_sqrt(d).is_some() {
        return Err(Error::SquareInput(d.clone()));
    }
    Ok(floor_sqrt(d))
}

/// One step of the expansion: the partial quotient `a` together with the
/// `(m, d)` pair that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdState {
    pub m: BigUint,
    pub d: BigUint,
    pub a: BigUint,
    pub k: u64,
}

/// Unbounded stream of partial quotients of `sqrt(D)`.
#[derive(Clone, Debug)]
pub struct SurdStream {
    radicand: BigUint,
    a0: BigUint,
    state: SurdState,
    started: bool,
}

/// Start streaming the expansion of `sqrt(D)`.
pub fn cf_stream(radicand: &BigUint) -> Result<SurdStream> {
    let a0 = check_radicand(radicand)?;
    Ok(SurdStream {
        radicand: radicand.clone(),
        state: SurdState {
            m: BigUint::zero(),
            d: BigUint::one(),
            a: a0.clone(),
            k: 0,
        },
        a0,
        started: false,
    })
}

impl SurdStream {
    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn a0(&self) -> &BigUint {
        &self.a0
    }

    fn advance(&mut self) {
        let s = &mut self.state;
        let m = &s.d * &s.a - &s.m;
        let (d, rem) = (&self.radicand - &m * &m).div_rem(&s.d);
        debug_assert!(rem.is_zero(), "inexact division in surd recurrence");
        let a = (&self.a0 + &m) / &d;
        s.m = m;
        s.d = d;
        s.a = a;
        s.k += 1;
    }
}

impl Iterator for SurdStream {
    type Item = SurdState;

    fn next(&mut self) -> Option<SurdState> {
        if self.started {
            self.advance();
        }
        self.started = true;
        Some(self.state.clone())
    }
}

/// `sqrt(D) = [a0; period]` with the period word possibly elided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfExpansion {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub radicand: BigUint,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub a0: BigUint,
    /// The full period word, or `None` when it is longer than the word cap.
    #[serde(serialize_with = "crate::serde_big::opt_biguint_vec")]
    pub period: Option<Vec<BigUint>>,
    pub r: u64,
}

impl CfExpansion {
    /// Last quotient is `2*a0` and the rest of the word reads the same backwards.
    pub fn has_palindromic_period(&self) -> Option<bool> {
        let w = self.period.as_ref()?;
        let (last, body) = w.split_last()?;
        let doubled = &self.a0 << 1u32;
        Some(*last == doubled && body.iter().eq(body.iter().rev()))
    }
}

/// Expand `sqrt(D)` through one full period.
pub fn cf_sqrt(radicand: &BigUint, word_cap: usize) -> Result<CfExpansion> {
    let mut stream = cf_stream(radicand)?;
    let a0 = stream.a0().clone();
    stream.next();
    let mut word = Some(Vec::new());
    let mut r = 0u64;
    for s in stream {
        r += 1;
        if let Some(w) = word.as_mut() {
            if w.len() < word_cap {
                w.push(s.a.clone());
            } else {
                word = None;
            }
        }
        if s.d.is_one() {
            break;
        }
    }
    Ok(CfExpansion {
        radicand: radicand.clone(),
        a0,
        period: word,
        r,
    })
}

const FP_MOD: u128 = (1 << 61) - 1;
const FP_BASE: u128 = 1_000_003;

fn mulmod(a: u128, b: u128) -> u128 {
    (a * b) % FP_MOD
}

fn powmod(mut b: u128, mut e: u64) -> u128 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

/// Streaming palindrome test of `a_1 .. a_{r-1}` by polynomial fingerprints:
/// with `F = sum a_i x^i` and `G = sum a_i x^-i` the word is a palindrome
/// iff (up to fingerprint collision) `F = x^r G`.
#[derive(Clone, Debug)]
struct PalindromeFingerprint {
    fwd: u128,
    bwd: u128,
    x_pow: u128,
    x_inv_pow: u128,
    x_inv: u128,
}

impl PalindromeFingerprint {
    fn new() -> Self {
        PalindromeFingerprint {
            fwd: 0,
            bwd: 0,
            x_pow: 1,
            x_inv_pow: 1,
            x_inv: powmod(FP_BASE, (FP_MOD - 2) as u64),
        }
    }

    fn push(&mut self, a_mod: u128) {
        self.x_pow = mulmod(self.x_pow, FP_BASE);
        self.x_inv_pow = mulmod(self.x_inv_pow, self.x_inv);
        self.fwd = (self.fwd + mulmod(a_mod, self.x_pow)) % FP_MOD;
        self.bwd = (self.bwd + mulmod(a_mod, self.x_inv_pow)) % FP_MOD;
    }

    fn is_palindrome(&self, r: u64) -> bool {
        self.fwd == mulmod(powmod(FP_BASE, r), self.bwd)
    }
}

/// Period statistics gathered without storing the word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodStats {
    pub r: u64,
    /// `r / (sqrt(D) ln D)`.
    pub bound_ratio: f64,
    /// Fingerprint check of the palindrome property plus `a_r = 2 a0`.
    pub palindrome_ok: bool,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub max_partial_quotient: BigUint,
    /// True when the machine-word path was used.
    pub word_state: bool,
}

fn bound_ratio(radicand: &BigUint, r: u64) -> f64 {
    let ln = crate::arith::ln_biguint(radicand);
    r as f64 / ((ln / 2.0).exp() * ln)
}

/// Period length of `sqrt(D)` with `O(1)` memory. Radicands below `2^124`
/// run on `u128` state.
pub fn period_length(radicand: &BigUint) -> Result<PeriodStats> {
    let a0 = check_radicand(radicand)?;
    if radicand.bits() < 124 {
        let d = radicand.to_u128().expect("fits in u128");
        let a0 = a0.to_u128().expect("fits in u128");
        Ok(period_u128(d, a0, radicand))
    } else {
        Ok(period_big(radicand))
    }
}

fn period_u128(radicand: u128, a0: u128, big: &BigUint) -> PeriodStats {
    let (mut m, mut d, mut a) = (0u128, 1u128, a0);
    let mut r = 0u64;
    let mut fp = PalindromeFingerprint::new();
    let mut max_a = 0u128;
    loop {
        m = d * a - m;
        d = (radicand - m * m) / d;
        a = (a0 + m) / d;
        r += 1;
        max_a = max_a.max(a);
        if d == 1 {
            break;
        }
        fp.push(a % FP_MOD);
    }
    PeriodStats {
        r,
        bound_ratio: bound_ratio(big, r),
        palindrome_ok: a == 2 * a0 && fp.is_palindrome(r),
        max_partial_quotient: BigUint::from(max_a),
        word_state: true,
    }
}

fn period_big(radicand: &BigUint) -> PeriodStats {
    let mut stream = cf_stream(radicand).expect("radicand already checked");
    let a0 = stream.a0().clone();
    stream.next();
    let modulus = BigUint::from(FP_MOD);
    let mut fp = PalindromeFingerprint::new();
    let mut max_a = BigUint::zero();
    let mut r = 0u64;
    let mut last = BigUint::zero();
    for s in stream {
        r += 1;
        if s.a > max_a {
            max_a = s.a.clone();
        }
        if s.d.is_one() {
            last = s.a;
            break;
        }
        fp.push((&s.a % &modulus).to_u128().unwrap());
    }
    PeriodStats {
        r,
        bound_ratio: bound_ratio(radicand, r),
        palindrome_ok: last == (&a0 << 1u32) && fp.is_palindrome(r),
        max_partial_quotient: max_a,
        word_state: false,
    }
}

/// The convergent `p_j / q_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub p: BigUint,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub q: BigUint,
    pub j: u64,
}

/// A convergent with its norm `p^2 - D q^2` and the next partial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentStep {
    pub convergent: Convergent,
    pub norm: BigInt,
    pub next_quotient: BigUint,
}

/// Unbounded stream of convergents of `sqrt(D)`.
#[derive(Clone, Debug)]
pub struct ConvergentStream {
    surd: SurdStream,
    pending: SurdState,
    p: (BigUint, BigUint),
    q: (BigUint, BigUint),
}

pub fn convergent_stream(radicand: &BigUint) -> Result<ConvergentStream> {
    let mut surd = cf_stream(radicand)?;
    let pending = surd.next().expect("stream is infinite");
    Ok(ConvergentStream {
        surd,
        pending,
        p: (BigUint::zero(), BigUint::one()),
        q: (BigUint::one(), BigUint::zero()),
    })
}

impl Iterator for ConvergentStream {
    type Item = ConvergentStep;

    fn next(&mut self) -> Option<ConvergentStep> {
        let j = self.pending.k;
        let a = &self.pending.a;
        let p = a * &self.p.1 + &self.p.0;
        let q = a * &self.q.1 + &self.q.0;
        self.p = (std::mem::take(&mut self.p.1), p.clone());
        self.q = (std::mem::take(&mut self.q.1), q.clone());
        self.pending = self.surd.next().expect("stream is infinite");
        let d_next = BigInt::from(self.pending.d.clone());
        let norm = if j.is_multiple_of(2) { -d_next } else { d_next };
        Some(ConvergentStep {
            convergent: Convergent { p, q, j },
            norm,
            next_quotient: self.pending.a.clone(),
        })
    }
}

pub fn convergents(radicand: &BigUint, count: usize) -> Result<Vec<Convergent>> {
    Ok(convergent_stream(radicand)?
        .take(count)
        .map(|s| s.convergent)
        .collect())
}

/// Certified test of `|sqrt(D) - p/q| < 1/q^2` by interval arithmetic.
///
/// Precision starts at `4 * bits(q) + 64` and doubles until the comparison is
/// decided; `None` if still undecided at `max_scale` bits.
pub fn certify_approximation(radicand: &BigUint, c: &Convergent, max_scale: u32) -> Option<bool> {
    use crate::interval::Interval;
    use num_rational::BigRational;

    let d = BigRational::from_integer(radicand.clone().into());
    let q: BigInt = c.q.clone().into();
    let x = BigRational::new(c.p.clone().into(), q.clone());
    let bound = BigRational::new(BigInt::one(), &q * &q);
    let mut scale = 4 * c.q.bits() as u32 + 64;
    while scale <= max_scale {
        let gap = Interval::sqrt(&d, scale)
            .sub(&Interval::from_rational(&x, scale))
            .abs();
        let b = Interval::from_rational(&bound, scale);
        if gap.certainly_lt(&b) {
            return Some(true);
        }
        if b.certainly_lt(&gap) {
            return Some(false);
        }
        scale *= 2;
    }
    None
}

/// A pair `(X, Y)` with its exact norm `X^2 - D Y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub x: BigUint,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub y: BigUint,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub value: BigInt,
}

impl PellSolution {
    pub fn new(radicand: &BigUint, x: BigUint, y: BigUint) -> Self {
        let value = BigInt::from(&x * &x) - BigInt::from(radicand * &y * &y);
        PellSolution { x, y, value }
    }
}

/// Fundamental solution of `|X^2 - D Y^2| = 1`: the convergent at index `r - 1`.
pub fn fundamental_pell(radicand: &BigUint) -> Result<PellSolution> {
    fundamental_pell_capped(radicand, DEFAULT_PELL_PERIOD_CAP)
}

pub fn fundamental_pell_capped(radicand: &BigUint, period_cap: u64) -> Result<PellSolution> {
    let r = period_length(radicand)?.r;
    if r > period_cap {
        return Err(Error::ResourceLimit {
            what: format!("period length {r} of sqrt({radicand})"),
            cap: period_cap,
        });
    }
    let step = convergent_stream(radicand)?
        .nth((r - 1) as usize)
        .expect("stream is infinite");
    let sol = PellSolution::new(radicand, step.convergent.p, step.convergent.q);
    debug_assert_eq!(sol.value, BigInt::from(sign_pow(r as usize)));
    Ok(sol)
}
