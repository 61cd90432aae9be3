//! Experiment orchestration: run a family `D = f(n)` over a range of `n`,
//! check the closed-form expansion identities, and serialize the results.

pub mod emit;
pub mod identities;

pub use emit::{
    emit, emit_denominators, emit_expansion_table, emit_pell_growth, emit_profiles, Format,
    FAMILY_CSV_HEADER,
};
pub use identities::{run_identity_checks, IdentityFailure, IdentityReport};

use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_sqrt, sign_pow, to_biguint};
use crate::error::{Error, Result};
use crate::form::PowerSumForm;
use crate::growth::DEFAULT_DIGIT_BUDGET;
use crate::surd::{
    cf_sqrt, fundamental_pell_capped, period_length, DEFAULT_PELL_PERIOD_CAP, DEFAULT_WORD_CAP,
};

/// Families that ship with the binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `2*4^n + 1 = 2^(2n+1) + 1`.
    Title,
    /// `4^n + 1 = (2^n)^2 + 1`, period 1 for every `n`.
    EvenExponent,
    /// `v^2 w^2 + 2w` with `v = 2^n`, `w = 3^n`, period 2 for every `n`.
    V2W2,
}

impl Preset {
    pub fn form(self) -> PowerSumForm {
        let text = match self {
            Preset::Title => "2*4^n + 1",
            Preset::EvenExponent => "4^n + 1",
            Preset::V2W2 => "36^n + 2*3^n",
        };
        text.parse().expect("preset forms parse")
    }

    pub fn default_range(self) -> RangeInclusive<u64> {
        match self {
            Preset::Title => 1..=20,
            Preset::EvenExponent => 1..=12,
            Preset::V2W2 => 1..=8,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "title" => Ok(Preset::Title),
            "even-exponent" => Ok(Preset::EvenExponent),
            "v2w2" => Ok(Preset::V2W2),
            other => Err(Error::InvalidArgument(format!("unknown preset {other:?}"))),
        }
    }
}

/// Parse `a..b` (inclusive on both ends) or a single `n`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::InvalidArgument(format!("expected a range like 2..20, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub form: PowerSumForm,
    pub n_range: RangeInclusive<u64>,
    /// Longest period word kept when `keep_words` is set.
    pub word_cap: usize,
    /// Longest period for which the fundamental solution is computed exactly.
    pub pell_period_cap: u64,
    pub digit_budget: u64,
    pub format: Format,
    pub jobs: usize,
    pub keep_words: bool,
}

impl ExperimentConfig {
    pub fn new(form: PowerSumForm, n_range: RangeInclusive<u64>) -> Self {
        ExperimentConfig {
            form,
            n_range,
            word_cap: DEFAULT_WORD_CAP,
            pell_period_cap: DEFAULT_PELL_PERIOD_CAP,
            digit_budget: DEFAULT_DIGIT_BUDGET,
            format: Format::Csv,
            jobs: 1,
            keep_words: false,
        }
    }

    pub fn preset(p: Preset) -> Self {
        Self::new(p.form(), p.default_range())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_range.is_empty() {
            return Err(Error::InvalidArgument("empty n range".into()));
        }
        if self.word_cap == 0 || self.pell_period_cap == 0 || self.digit_budget == 0 || self.jobs == 0 {
            return Err(Error::InvalidArgument("caps and job count must be positive".into()));
        }
        if !self.form.class().integral_bases {
            return Err(Error::NonIntegralBases);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub n: u64,
    #[serde(rename = "D", serialize_with = "crate::serde_big::biguint")]
    pub radicand: BigUint,
    pub is_square: bool,
    pub r: Option<u64>,
    pub palindrome_ok: Option<bool>,
    pub pell_sign: Option<i32>,
    #[serde(serialize_with = "crate::serde_big::opt_biguint")]
    pub max_pq_prefix: Option<BigUint>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(serialize_with = "crate::serde_big::opt_biguint_vec")]
    pub period: Option<Vec<BigUint>>,
    /// A resource cap was hit while producing this row.
    #[serde(skip)]
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRun {
    pub records: Vec<FamilyRecord>,
    /// `min r(m)` over `m >= n` within the run (square rows skipped).
    pub suffix_min: Vec<Option<u64>>,
}

impl FamilyRun {
    pub fn any_capped(&self) -> bool {
        self.records.iter().any(|r| r.capped)
    }
}

fn family_row(cfg: &ExperimentConfig, n: u64) -> Result<FamilyRecord> {
    let value: BigInt = cfg.form.eval_integer(n)?;
    let radicand = to_biguint(&value)
        .filter(|v| v.bits() > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("f({n}) = {value} is not positive")))?;
    let mut rec = FamilyRecord {
        n,
        radicand: radicand.clone(),
        is_square: false,
        r: None,
        palindrome_ok: None,
        pell_sign: None,
        max_pq_prefix: None,
        notes: Vec::new(),
        period: None,
        capped: false,
    };
    if exact_sqrt(&radicand).is_some() {
        rec.is_square = true;
        rec.notes.push("square".into());
        return Ok(rec);
    }
    let stats = period_length(&radicand)?;
    let r = stats.r;
    rec.r = Some(r);
    rec.palindrome_ok = Some(stats.palindrome_ok);
    rec.max_pq_prefix = Some(stats.max_partial_quotient);
    // p_{r-1}^2 - D q_{r-1}^2 = (-1)^r d_r and d_r = 1 ends the period.
    let sign = sign_pow(r as usize);
    rec.pell_sign = Some(sign);
    if r <= cfg.pell_period_cap {
        let sol = fundamental_pell_capped(&radicand, cfg.pell_period_cap)?;
        if sol.y.bits() > crate::growth::digit_budget_bits(cfg.digit_budget) {
            rec.capped = true;
            rec.notes.push("digit-budget".into());
        }
        if sol.value != BigInt::from(sign) {
            rec.notes.push(format!("pell-mismatch:{}", sol.value));
        }
    } else {
        rec.capped = true;
        rec.notes.push("pell-cap".into());
    }
    if cfg.keep_words {
        if r as usize <= cfg.word_cap {
            let e = cf_sqrt(&radicand, cfg.word_cap)?;
            rec.palindrome_ok = e.has_palindromic_period();
            rec.period = e.period;
        } else {
            rec.capped = true;
            rec.notes.push("word-cap".into());
        }
    }
    Ok(rec)
}

/// One record per `n` in ascending order; identical for any `jobs`.
pub fn run_family(cfg: &ExperimentConfig) -> Result<FamilyRun> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let ns: Vec<u64> = cfg.n_range.clone().collect();
    let records = pool.install(|| {
        ns.par_iter()
            .map(|&n| family_row(cfg, n))
            .collect::<Result<Vec<_>>>()
    })?;
    let suffix_min = suffix_minimum(&records);
    Ok(FamilyRun { records, suffix_min })
}

fn suffix_minimum(records: &[FamilyRecord]) -> Vec<Option<u64>> {
    let mut out = vec![None; records.len()];
    let mut acc: Option<u64> = None;
    for (i, rec) in records.iter().enumerate().rev() {
        if let Some(r) = rec.r {
            acc = Some(acc.map_or(r, |a| a.min(r)));
        }
        out[i] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn title_rows() {
        let mut cfg = ExperimentConfig::new(Preset::Title.form(), 1..=3);
        cfg.keep_words = true;
        let run = run_family(&cfg).unwrap();
        let r = &run.records;
        assert!(r[0].is_square && r[0].r.is_none());
        assert_eq!(r[0].radicand, BigUint::from(9u32));
        assert_eq!((r[1].r, r[2].r), (Some(4), Some(10)));
        let w: Vec<u64> = r[2].period.as_ref().unwrap().iter().map(|a| a.to_u64().unwrap()).collect();
        assert_eq!(w, [2, 1, 3, 1, 6, 1, 3, 1, 2, 22]);
        assert_eq!(r[1].pell_sign, Some(1));
        assert_eq!(run.suffix_min, [Some(4), Some(4), Some(10)]);
    }

    #[test]
    fn contrast_family_has_period_one() {
        let run = run_family(&ExperimentConfig::new(Preset::EvenExponent.form(), 1..=10)).unwrap();
        for rec in &run.records {
            assert_eq!(rec.r, Some(1));
            assert_eq!(rec.pell_sign, Some(-1));
        }
    }

    #[test]
    fn caps_flag_rows() {
        let mut cfg = ExperimentConfig::new(Preset::Title.form(), 3..=3);
        cfg.pell_period_cap = 4;
        cfg.keep_words = true;
        cfg.word_cap = 5;
        let run = run_family(&cfg).unwrap();
        assert!(run.any_capped());
        assert_eq!(run.records[0].notes, ["pell-cap", "word-cap"]);
        assert_eq!(run.records[0].r, Some(10));
    }

    #[test]
    fn parallel_matches_serial() {
        let mut cfg = ExperimentConfig::new(Preset::Title.form(), 1..=14);
        let serial = run_family(&cfg).unwrap();
        cfg.jobs = 4;
        assert_eq!(run_family(&cfg).unwrap(), serial);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(Preset::Title.form(), 1..=3);
        cfg.word_cap = 0;
        assert!(run_family(&cfg).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let cfg = ExperimentConfig::new(Preset::Title.form(), 3..=1);
        assert!(run_family(&cfg).is_err());
        let cfg = ExperimentConfig::new("-4^n".parse().unwrap(), 1..=1);
        assert!(run_family(&cfg).is_err());
    }

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("2..20").unwrap(), 2..=20);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..b").is_err());
        assert_eq!("v2w2".parse::<Preset>().unwrap(), Preset::V2W2);
        assert!("nope".parse::<Preset>().is_err());
    }
}
