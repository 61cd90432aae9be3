//! CSV and JSON writers. CSV is the stable contract: decimal integers, empty
//! cells for absent values, `\n` line endings, non-empty notes quoted.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::FamilyRecord;
use crate::arith::ln_abs_rational;
use crate::error::{Error, Result};
use crate::expansion::SqrtApprox;
use crate::growth::{DenominatorRecord, PellGrowth, Profile};

pub const FAMILY_CSV_HEADER: &str = "n,D,is_square,r,palindrome_ok,pell_sign,max_pq_prefix,notes";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn quoted(notes: &[String]) -> String {
    if notes.is_empty() {
        String::new()
    } else {
        format!("\"{}\"", notes.join(";").replace('"', "\"\""))
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Serialize family records.
pub fn emit(records: &[FamilyRecord], format: Format) -> String {
    match format {
        Format::Json => json(records),
        Format::Csv => {
            let mut out = String::from(FAMILY_CSV_HEADER);
            out.push('\n');
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    r.radicand,
                    r.is_square,
                    opt(&r.r),
                    opt(&r.palindrome_ok),
                    opt(&r.pell_sign),
                    opt(&r.max_pq_prefix),
                    quoted(&r.notes)
                )
                .unwrap();
            }
            out
        }
    }
}

fn fmt_f64(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.12}")).unwrap_or_default()
}

/// Columns `n,D,y_min,x,value,ln_y_min,complete,notes`.
pub fn emit_pell_growth(g: &PellGrowth, format: Format) -> String {
    if format == Format::Json {
        return json(g);
    }
    let mut out = String::from("n,D,y_min,x,value,ln_y_min,complete,notes\n");
    for r in &g.records {
        let s = r.solution.as_ref();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.radicand,
            opt(&s.map(|s| &s.y)),
            opt(&s.map(|s| &s.x)),
            opt(&s.map(|s| &s.value)),
            fmt_f64(r.statistic),
            r.complete,
            quoted(r.note.as_slice())
        )
        .unwrap();
    }
    out
}

/// Columns `n,denominator,ln_denominator,threshold,flagged`.
pub fn emit_denominators(recs: &[DenominatorRecord], format: Format) -> String {
    if format == Format::Json {
        return json(recs);
    }
    let mut out = String::from("n,denominator,ln_denominator,threshold,flagged\n");
    for r in recs {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            r.denominator,
            fmt_f64(Some(r.statistic)),
            fmt_f64(Some(r.threshold)),
            r.flagged
        )
        .unwrap();
    }
    out
}

/// Columns `n,D,prefix_len,max_pq,min_exponent,max_exponent,hit_q_bound`.
pub fn emit_profiles(profiles: &[(u64, Option<Profile>)], format: Format) -> String {
    if format == Format::Json {
        let present: Vec<&Profile> = profiles.iter().filter_map(|(_, p)| p.as_ref()).collect();
        return json(&present);
    }
    let mut out = String::from("n,D,prefix_len,max_pq,min_exponent,max_exponent,hit_q_bound\n");
    for (n, p) in profiles {
        let Some(p) = p else {
            writeln!(out, "{n},,,,,,").unwrap();
            continue;
        };
        let exps = p.entries.iter().filter_map(|e| e.exponent);
        let min = exps.clone().fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
        let max = exps.fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.n,
            p.radicand,
            p.entries.len(),
            p.max_partial_quotient,
            fmt_f64(min),
            fmt_f64(max),
            p.hit_q_bound
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct ExpansionRow {
    n: u64,
    log10_error_lower: Option<f64>,
    log10_error_upper: Option<f64>,
    decay_lower: Option<f64>,
    decay_upper: Option<f64>,
}

/// Columns `n,log10_error_lower,log10_error_upper,decay_lower,decay_upper`,
/// where decay is `error(n-1)/error(n)`.
pub fn emit_expansion_table(
    approx: &SqrtApprox,
    n_range: std::ops::RangeInclusive<u64>,
    format: Format,
) -> String {
    let log10 = |x: &num_rational::BigRational| {
        use num_traits::Zero;
        (!x.is_zero()).then(|| ln_abs_rational(x) / std::f64::consts::LN_10)
    };
    let mut rows = Vec::new();
    let mut prev: Option<crate::expansion::Bounds> = None;
    for n in n_range {
        let e = approx.certified_error(n);
        let (dl, du) = match &prev {
            Some(p) => match (log10(&p.lower), log10(&p.upper), log10(&e.lower), log10(&e.upper)) {
                (Some(pl), Some(pu), Some(el), Some(eu)) => {
                    (Some(10f64.powf(pl - eu)), Some(10f64.powf(pu - el)))
                }
                _ => (None, None),
            },
            None => (None, None),
        };
        rows.push(ExpansionRow {
            n,
            log10_error_lower: log10(&e.lower),
            log10_error_upper: log10(&e.upper),
            decay_lower: dl,
            decay_upper: du,
        });
        prev = Some(e);
    }
    if format == Format::Json {
        return json(&rows);
    }
    let mut out = String::from("n,log10_error_lower,log10_error_upper,decay_lower,decay_upper\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            fmt_f64(r.log10_error_lower),
            fmt_f64(r.log10_error_upper),
            fmt_f64(r.decay_lower),
            fmt_f64(r.decay_upper)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_family, ExperimentConfig, Preset};

    #[test]
    fn family_csv_rows() {
        let run = run_family(&ExperimentConfig::new(Preset::Title.form(), 1..=2)).unwrap();
        let csv = emit(&run.records, Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], FAMILY_CSV_HEADER);
        assert_eq!(lines[1], "1,9,true,,,,,\"square\"");
        assert_eq!(lines[2], "2,33,false,4,true,1,10,");
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn empty_records_give_header_only() {
        assert_eq!(emit(&[], Format::Csv), format!("{FAMILY_CSV_HEADER}\n"));
    }

    #[test]
    fn json_mirrors_csv_fields() {
        let run = run_family(&ExperimentConfig::new(Preset::Title.form(), 2..=2)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit(&run.records, Format::Json)).unwrap();
        let row = &v[0];
        for key in FAMILY_CSV_HEADER.split(',') {
            assert!(row.get(key).is_some(), "missing {key}");
        }
        assert_eq!(row["D"], "33");
        assert_eq!(row["r"], 4);
        assert_eq!(row["max_pq_prefix"], "10");
    }

    #[test]
    fn notes_are_escaped() {
        assert_eq!(quoted(&["a\"b".into(), "c".into()]), "\"a\"\"b;c\"");
    }
}
