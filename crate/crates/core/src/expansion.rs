//! Square roots of power sums.
//!
//! For a form whose leading base `b_1` is a perfect square, write
//! `f(n) = a_1 b_1^n (1 + delta(n))` and truncate the binomial series of
//! `sqrt(1 + delta)` after `k` terms, where `k` is the least positive integer
//! with `beta^k > b_1` and `beta = b_1 / b_2`. Clearing denominators gives
//!
//! ```text
//! sqrt(f(n)) = alpha * f1(n) / b_1^((k - 1/2) n) + O(b_1^(-n/2) beta^(-n)),   alpha^2 = a_1,
//! ```
//!
//! with `f1` an integer-rooted form. `alpha` is never materialized: identities
//! are checked on `alpha^2`, numerics go through [`Interval`] enclosures.
//!
//! The same series, truncated to the terms that do not decay, decides whether
//! `f(2n+j) = h(n)^2 + g(n)` for an integer-rooted `h` and a remainder `g`
//! that grows strictly slower than `sqrt(f(2n+j))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{is_integer, ln_abs_rational, rational_sqrt, rpow};
use crate::error::{Error, Result};
use crate::form::{Beta, PowerSumForm};
use crate::interval::Interval;

/// `binom(1/2, i)`.
pub fn half_binomial(i: u32) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    (0..i).fold(BigRational::one(), |acc, t| {
        let t = BigRational::from_integer(t.into());
        acc * (&half - &t) / (t + BigRational::one())
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqrtApprox {
    /// The expanded form; its leading base is a perfect square.
    pub source: PowerSumForm,
    pub alpha_squared: BigRational,
    pub f1: PowerSumForm,
    pub k: u32,
    pub beta: Beta,
    /// `sqrt(b_1)`.
    pub root_b1: BigRational,
    /// `sqrt(b_1) * beta`; `None` for single-term forms, where the expansion is exact.
    pub error_base: Option<BigRational>,
}

/// Build the truncated expansion of `sqrt(f)`.
///
/// With `j = Some(j)` the form is first replaced by `n -> f(2n + j)`, which
/// makes the leading base a square for any integer-rooted form. With `None`
/// the form is used as given and its leading base must already be a square.
pub fn sqrt_approx(f: &PowerSumForm, j: Option<u8>) -> Result<SqrtApprox> {
    let source = match j {
        Some(j) => f.compose_affine(j)?,
        None => f.clone(),
    };
    source.require_integral_bases()?;
    let (a1, b1) = source.dominant()?;
    if !a1.is_positive() {
        return Err(Error::NegativeLeading(a1.to_string()));
    }
    let root_b1 =
        rational_sqrt(b1).ok_or_else(|| Error::NonSquareLeadingBase(b1.to_string()))?;
    let beta = source.beta()?;

    let (k, f1, error_base) = match &beta {
        Beta::Infinite => {
            let f1 = PowerSumForm::monomial(BigRational::one(), b1.clone())?;
            (1, f1, None)
        }
        Beta::Finite(beta) => {
            let mut k = 1u32;
            while rpow(beta, k as u64) <= *b1 {
                k += 1;
            }
            let delta = source.delta_form()?;
            let mut series = PowerSumForm::constant(BigRational::one());
            let mut power = series.clone();
            for i in 1..=k {
                power = &power * &delta;
                series = &series + &power.scale(&half_binomial(i));
            }
            let f1 = series.shift_bases(&rpow(b1, k as u64))?;
            (k, f1, Some(&root_b1 * beta))
        }
    };

    Ok(SqrtApprox {
        alpha_squared: a1.clone(),
        root_b1,
        source,
        f1,
        k,
        beta,
        error_base,
    })
}

/// Certified bounds on a non-negative real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl SqrtApprox {
    /// `f1(n) / b_1^((k - 1/2) n)` as an exact rational; the approximation is `alpha` times this.
    pub fn rational_part(&self, n: u64) -> BigRational {
        let b1 = &self.root_b1 * &self.root_b1;
        self.f1.eval_exact(n) * rpow(&self.root_b1, n) / rpow(&b1, self.k as u64 * n)
    }

    /// Enclosure of `alpha * f1(n) / b_1^((k - 1/2) n)`.
    pub fn approx_interval(&self, n: u64, scale: u32) -> Interval {
        let r = self.rational_part(n);
        let mag = Interval::sqrt(&(&self.alpha_squared * &r * &r), scale);
        if r.is_negative() {
            Interval::from_rational(&BigRational::zero(), scale).sub(&mag)
        } else {
            mag
        }
    }

    /// Certified bounds on `|sqrt(source(n)) - alpha f1(n) / b_1^((k - 1/2) n)|`.
    ///
    /// Precision is raised until the enclosure is within a `2^-24` relative
    /// width; an exact zero error is detected by rational arithmetic.
    pub fn certified_error(&self, n: u64) -> Bounds {
        let value = self.source.eval_exact(n);
        let r = self.rational_part(n);
        if !r.is_negative() && &self.alpha_squared * &r * &r == value {
            return Bounds {
                lower: BigRational::zero(),
                upper: BigRational::zero(),
            };
        }
        let mut scale = 128u32;
        loop {
            let err = Interval::sqrt(&value, scale)
                .sub(&self.approx_interval(n, scale))
                .abs();
            let tight = err.is_positive()
                && err.width() * BigRational::from_integer(BigInt::from(1u32 << 24))
                    < err.lower();
            if tight || scale >= 1 << 22 {
                return Bounds {
                    lower: err.lower(),
                    upper: err.upper(),
                };
            }
            scale *= 2;
        }
    }

    /// `b_1^((2k-1) n) source(n) - a_1 f1(n)^2`, an exact form whose dominant
    /// base measures how far `alpha f1 / b_1^((k-1/2)n)` is from `sqrt(source)`.
    pub fn algebraic_residual(&self) -> PowerSumForm {
        let b1 = &self.root_b1 * &self.root_b1;
        let lifted = self
            .source
            .shift_bases(&rpow(&b1, 2 * self.k as u64 - 1))
            .expect("positive base");
        &lifted - &(&self.f1 * &self.f1).scale(&self.alpha_squared)
    }
}

/// Outcome of the cheap sufficient test for Hypothesis (H).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialVerdict {
    Holds,
    Unknown,
}

/// Holds when neither `a_1` nor `a_1 b_1` is the square of a rational: then
/// `f(2n+j)` has an irrational leading square-root coefficient for both `j`.
pub fn hypothesis_h_trivial(f: &PowerSumForm) -> Result<TrivialVerdict> {
    let (a1, b1) = f.dominant()?;
    if !a1.is_positive() {
        return Err(Error::NegativeLeading(a1.to_string()));
    }
    if rational_sqrt(a1).is_none() && rational_sqrt(&(a1 * b1)).is_none() {
        Ok(TrivialVerdict::Holds)
    } else {
        Ok(TrivialVerdict::Unknown)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    HoldsByTrivialCriterion,
}

impl Verdict {
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::Fails)
    }
}

/// `f(2n + j) = h(n)^2 + g(n)` with `g` growing slower than `sqrt(f(2n + j))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub j: u8,
    pub h: PowerSumForm,
    pub g: PowerSumForm,
    /// A rational `delta < 1/2` with `|g(n)| << f(2n+j)^delta`.
    pub delta_bound: BigRational,
}

/// Why a given `j` does or does not produce a witness.
#[derive(Clone, Debug, PartialEq)]
pub enum BranchOutcome {
    Witness(Witness),
    /// `sqrt(a_1 b_1^j)` is irrational.
    IrrationalLeading,
    /// The non-decaying part of the square-root series has a non-integer root.
    NonIntegralRoot(BigRational),
    /// `h` exists but the remainder is too large (cannot happen for a
    /// correctly truncated series; kept so the check is explicit).
    RemainderTooLarge(PowerSumForm),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub verdict: Verdict,
    pub branches: [BranchOutcome; 2],
}

impl HypothesisReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.branches.iter().filter_map(|b| match b {
            BranchOutcome::Witness(w) => Some(w),
            _ => None,
        })
    }
}

/// The part of the formal square root of `big_f` whose bases are at least 1.
/// Requires an integer-rooted `big_f` with a square leading base and positive
/// leading coefficient.
fn non_decaying_sqrt(big_f: &PowerSumForm) -> Result<BranchOutcome> {
    let (a, b) = big_f.dominant()?;
    let root_b = rational_sqrt(b).ok_or_else(|| Error::NonSquareLeadingBase(b.to_string()))?;
    let Some(root_a) = rational_sqrt(a) else {
        return Ok(BranchOutcome::IrrationalLeading);
    };
    let delta = big_f.delta_form()?;
    // After multiplying by sqrt(b_1)^n, a monomial of delta^i survives iff its
    // base is >= 1/sqrt(b_1); all delta bases are < 1, so truncating each
    // partial product is exact for the kept terms and the loop terminates.
    let floor = root_b.recip();
    let mut series = PowerSumForm::constant(BigRational::one());
    let mut power = series.clone();
    let mut i = 0u32;
    loop {
        i += 1;
        power = power.mul_truncated(&delta, &floor);
        if power.is_zero() {
            break;
        }
        series = &series + &power.scale(&half_binomial(i));
    }
    let h = series.shift_bases(&root_b)?.scale(&root_a);
    if let Some(t) = h.terms().iter().find(|t| !is_integer(&t.base)) {
        return Ok(BranchOutcome::NonIntegralRoot(t.base.clone()));
    }
    let g = big_f - &(&h * &h);
    match remainder_delta_bound(&g, b) {
        Some(delta_bound) => Ok(BranchOutcome::Witness(Witness {
            j: 0,
            h,
            g,
            delta_bound,
        })),
        None => Ok(BranchOutcome::RemainderTooLarge(g)),
    }
}

/// Smallest `p/q < 1/2` with `q <= 64` and `base_g^q < base_f^p`, or 0 when
/// `g` is bounded; `None` when the dominant base of `g` is at least
/// `sqrt(base_f)`.
fn remainder_delta_bound(g: &PowerSumForm, base_f: &BigRational) -> Option<BigRational> {
    let Some(bg) = g.dominant_base() else {
        return Some(BigRational::zero());
    };
    if *bg <= BigRational::one() {
        return Some(BigRational::zero());
    }
    if bg * bg >= *base_f {
        return None;
    }
    let mut best: Option<BigRational> = None;
    for q in 1u64..=64 {
        let gq = rpow(bg, q);
        // Least p with bg^q < base_f^p.
        let mut p = 1u64;
        while rpow(base_f, p) <= gq {
            p += 1;
        }
        let cand = BigRational::new(p.into(), q.into());
        if cand < BigRational::new(1.into(), 2.into()) && best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best
}

/// Decide Hypothesis (H) for an integer-rooted form with positive leading coefficient.
pub fn hypothesis_h_decide(f: &PowerSumForm) -> Result<HypothesisReport> {
    f.require_integral_bases()?;
    let trivial = hypothesis_h_trivial(f)?;
    let mut branches = Vec::with_capacity(2);
    for j in 0..=1u8 {
        let big_f = f.compose_affine(j)?;
        let outcome = match non_decaying_sqrt(&big_f)? {
            BranchOutcome::Witness(w) => BranchOutcome::Witness(Witness { j, ..w }),
            other => other,
        };
        branches.push(outcome);
    }
    let branches: [BranchOutcome; 2] = branches.try_into().expect("two branches");
    let fails = branches
        .iter()
        .any(|b| matches!(b, BranchOutcome::Witness(_)));
    let verdict = match (fails, trivial) {
        (true, _) => Verdict::Fails,
        (false, TrivialVerdict::Holds) => Verdict::HoldsByTrivialCriterion,
        (false, TrivialVerdict::Unknown) => Verdict::Holds,
    };
    Ok(HypothesisReport { verdict, branches })
}

/// `log(dominant base of g) / log(dominant base of f)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    /// `g = 0`.
    NegInfinity,
    Finite {
        value: f64,
        /// Exact value when both bases are powers of a common integer.
        exact: Option<BigRational>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthExponent {
    pub exponent: Exponent,
    /// Exact comparison `exponent < 1/2`.
    pub below_half: bool,
    /// `(n, ln|g(n)| / ln|f(n)|)` for each `n` where both sides are defined.
    pub measured: Vec<(u64, f64)>,
}

/// `(root, e)` with `n = root^e` and `e` maximal.
fn perfect_power(n: &BigInt) -> (BigInt, u32) {
    let bits = n.bits() as u32;
    for e in (2..=bits.max(2)).rev() {
        let r = n.nth_root(e);
        if r.pow(e) == *n {
            return (r, e);
        }
    }
    (n.clone(), 1)
}

fn exact_log_ratio(g: &BigRational, f: &BigRational) -> Option<BigRational> {
    if g.is_one() {
        return Some(BigRational::zero());
    }
    if !is_integer(g) || !is_integer(f) || g < &BigRational::one() {
        return None;
    }
    let (rg, eg) = perfect_power(&g.to_integer());
    let (rf, ef) = perfect_power(&f.to_integer());
    (rg == rf).then(|| BigRational::new(eg.into(), ef.into()))
}

pub fn growth_exponent(
    g: &PowerSumForm,
    f: &PowerSumForm,
    n_range: std::ops::RangeInclusive<u64>,
) -> Result<GrowthExponent> {
    let fb = f.dominant_base().ok_or(Error::EmptyForm)?;
    if *fb <= BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "dominant base of f must exceed 1, got {fb}"
        )));
    }
    let Some(gb) = g.dominant_base() else {
        return Ok(GrowthExponent {
            exponent: Exponent::NegInfinity,
            below_half: true,
            measured: Vec::new(),
        });
    };
    let value = ln_abs_rational(gb) / ln_abs_rational(fb);
    let measured = n_range
        .filter_map(|n| {
            let gv = g.eval_exact(n);
            let fv = f.eval_exact(n);
            if gv.is_zero() || fv.abs() <= BigRational::one() {
                return None;
            }
            Some((n, ln_abs_rational(&gv) / ln_abs_rational(&fv)))
        })
        .collect();
    Ok(GrowthExponent {
        exponent: Exponent::Finite {
            value,
            exact: exact_log_ratio(gb, fb),
        },
        below_half: gb * gb < *fb,
        measured,
    })
}

impl GrowthExponent {
    pub fn value(&self) -> f64 {
        match self.exponent {
            Exponent::NegInfinity => f64::NEG_INFINITY,
            Exponent::Finite { value, .. } => value,
        }
    }
}

/// Decay factor `error(n) / error(n+1)` bounds, from certified error bounds.
pub fn decay_factor_bounds(approx: &SqrtApprox, n: u64) -> Option<(f64, f64)> {
    let e0 = approx.certified_error(n);
    let e1 = approx.certified_error(n + 1);
    if e0.lower.is_zero() || e1.lower.is_zero() {
        return None;
    }
    let lo = &e0.lower / &e1.upper;
    let hi = &e0.upper / &e1.lower;
    Some((lo.to_f64()?, hi.to_f64()?))
}
