use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use powersum_cf::expansion::{hypothesis_h_decide, sqrt_approx, BranchOutcome};
use powersum_cf::growth::{denominator_growth, min_y_growth, partial_quotient_profile};
use powersum_cf::harness::{self, parse_range, ExperimentConfig, Format, Preset};
use powersum_cf::surd::{cf_sqrt, fundamental_pell_capped, period_length, DEFAULT_PELL_PERIOD_CAP};
use powersum_cf::{Error, PowerSumForm};

#[derive(Parser)]
#[command(name = "powersum-cf", version, about = "Continued fractions of square roots of power sums")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format; tables default to CSV, single results to plain text.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = powersum_cf::surd::DEFAULT_WORD_CAP)]
    word_cap: usize,
    #[arg(long, global = true, default_value_t = powersum_cf::growth::DEFAULT_DIGIT_BUDGET)]
    digit_budget: u64,
    /// Largest period for which fundamental solutions are computed.
    #[arg(long, global = true, default_value_t = DEFAULT_PELL_PERIOD_CAP)]
    pell_cap: u64,
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Exit with status 3 when a resource cap was hit.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction of sqrt(D).
    #[command(subcommand)]
    Cf(CfCmd),
    /// Small solutions of |X^2 - f(n) Y^2| < C.
    #[command(subcommand)]
    Pell(PellCmd),
    /// Denominators of f(n)/b^n.
    #[command(subcommand)]
    Growth(GrowthCmd),
    /// Partial-quotient profiles of sqrt(f(n)).
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Decide whether f(2n+j) = h(n)^2 + g(n) with small g.
    #[command(subcommand)]
    Hypothesis(HypothesisCmd),
    /// Truncated expansion of sqrt(f(n)).
    #[command(subcommand)]
    Expand(ExpandCmd),
    /// Period lengths along a family f(n).
    Family {
        #[arg(long, conflicts_with = "form")]
        preset: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        n: Option<String>,
        /// Also report period words up to the word cap.
        #[arg(long)]
        words: bool,
    },
    /// Check the closed-form expansions of h^2+1 and v^2w^2+2w.
    Identities,
}

#[derive(Subcommand)]
enum CfCmd {
    Sqrt { d: BigUint },
    Period { d: BigUint },
    Pell { d: BigUint },
}

#[derive(Subcommand)]
enum PellCmd {
    Scan {
        #[arg(long)]
        form: String,
        #[arg(long = "C", default_value_t = 2)]
        bound: u64,
        #[arg(long)]
        n: String,
    },
}

#[derive(Subcommand)]
enum GrowthCmd {
    Denom {
        #[arg(long)]
        form: String,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: String,
    },
}

#[derive(Subcommand)]
enum ProfileCmd {
    Pq {
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum HypothesisCmd {
    Check {
        #[arg(long)]
        form: String,
    },
}

#[derive(Subcommand)]
enum ExpandCmd {
    Sqrt {
        #[arg(long)]
        form: String,
        /// Substitute n -> 2n+j first; required when the leading base is not a square.
        #[arg(long)]
        j: Option<u8>,
        #[arg(long, default_value = "2..24")]
        n_range: String,
    },
}

enum Failure {
    Invariant(String),
    Input(Error),
    Cap,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

struct Output {
    text: String,
    capped: bool,
    invariant_failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            capped: false,
            invariant_failure: None,
        }
    }
}

fn form(text: &str) -> Result<PowerSumForm, Error> {
    text.parse()
}

fn range(text: &str) -> Result<RangeInclusive<u64>, Error> {
    parse_range(text)
}

fn table_format(g: &Global) -> Format {
    match g.format {
        Some(OutFormat::Json) => Format::Json,
        _ => Format::Csv,
    }
}

fn json_out(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let as_json = matches!(g.format, Some(OutFormat::Json));
    match &cli.command {
        Command::Cf(CfCmd::Sqrt { d }) => {
            let e = cf_sqrt(d, g.word_cap)?;
            let palindrome = e.has_palindromic_period();
            let text = if as_json {
                json_out(serde_json::to_value(&e).expect("json"))
            } else {
                let word = match &e.period {
                    Some(w) => w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
                    None => "(elided)".into(),
                };
                format!("D = {}\na0 = {}\nperiod = {{{word}}}\nr = {}\n", e.radicand, e.a0, e.r)
            };
            let mut o = Output::ok(text);
            o.capped = e.period.is_none();
            if palindrome == Some(false) {
                o.invariant_failure = Some(format!("period of sqrt({d}) is not palindromic"));
            }
            Ok(o)
        }
        Command::Cf(CfCmd::Period { d }) => {
            let s = period_length(d)?;
            let text = if as_json {
                json_out(serde_json::to_value(&s).expect("json"))
            } else {
                format!("r = {}\nratio = {:.6}\n", s.r, s.bound_ratio)
            };
            let mut o = Output::ok(text);
            if !s.palindrome_ok {
                o.invariant_failure = Some(format!("period of sqrt({d}) is not palindromic"));
            }
            Ok(o)
        }
        Command::Cf(CfCmd::Pell { d }) => {
            let s = match fundamental_pell_capped(d, g.pell_cap) {
                Err(Error::ResourceLimit { what, cap }) => {
                    return Ok(Output {
                        text: format!("resource limit: {what} exceeds cap {cap}\n"),
                        capped: true,
                        invariant_failure: None,
                    })
                }
                other => other?,
            };
            let text = if as_json {
                json_out(serde_json::to_value(&s).expect("json"))
            } else {
                format!("X = {}\nY = {}\nvalue = {}\n", s.x, s.y, s.value)
            };
            Ok(Output::ok(text))
        }
        Command::Pell(PellCmd::Scan { form: f, bound, n }) => {
            let f = form(f)?;
            let growth = min_y_growth(&f, *bound, range(n)?, g.digit_budget)?;
            if let Some(slope) = growth.slope {
                eprintln!("slope of ln Y_min: {slope:.6}");
            }
            if !growth.hypothesis_holds {
                eprintln!("note: the form fails Hypothesis (H); small Y are expected");
            }
            let capped = growth
                .records
                .iter()
                .any(|r| r.note.as_deref() == Some("digit-budget"));
            Ok(Output {
                text: harness::emit_pell_growth(&growth, table_format(g)),
                capped,
                invariant_failure: None,
            })
        }
        Command::Growth(GrowthCmd::Denom { form: f, b, n }) => {
            let recs = denominator_growth(&form(f)?, *b, range(n)?)?;
            Ok(Output::ok(harness::emit_denominators(&recs, table_format(g))))
        }
        Command::Profile(ProfileCmd::Pq { form: f, n, c }) => {
            let f = form(f)?;
            let profiles = range(n)?
                .map(|n| Ok((n, partial_quotient_profile(&f, n, *c)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Output::ok(harness::emit_profiles(&profiles, table_format(g))))
        }
        Command::Hypothesis(HypothesisCmd::Check { form: f }) => {
            let f = form(f)?;
            let report = hypothesis_h_decide(&f)?;
            let verdict = serde_json::to_value(report.verdict).expect("json");
            if as_json {
                let witnesses: Vec<_> = report
                    .witnesses()
                    .map(|w| {
                        json!({
                            "j": w.j,
                            "h": w.h.to_string(),
                            "g": w.g.to_string(),
                            "delta_bound": w.delta_bound.to_string(),
                        })
                    })
                    .collect();
                return Ok(Output::ok(json_out(json!({
                    "form": f.to_string(),
                    "verdict": verdict,
                    "witnesses": witnesses,
                }))));
            }
            let mut text = format!("form: {f}\nverdict: {}\n", verdict.as_str().unwrap());
            for (j, b) in report.branches.iter().enumerate() {
                let line = match b {
                    BranchOutcome::Witness(w) => {
                        format!("h = {}, g = {}, delta <= {}", w.h, w.g, w.delta_bound)
                    }
                    BranchOutcome::IrrationalLeading => "leading square-root coefficient is irrational".into(),
                    BranchOutcome::NonIntegralRoot(b) => format!("square-root series has non-integral root {b}"),
                    BranchOutcome::RemainderTooLarge(g) => format!("remainder {g} too large"),
                };
                writeln!(text, "j={j}: {line}").unwrap();
            }
            Ok(Output::ok(text))
        }
        Command::Expand(ExpandCmd::Sqrt { form: f, j, n_range }) => {
            let approx = sqrt_approx(&form(f)?, *j)?;
            eprintln!(
                "alpha^2 = {}, k = {}, f1 = {}, error base = {}",
                approx.alpha_squared,
                approx.k,
                approx.f1,
                approx.error_base.as_ref().map_or("none".into(), |b| b.to_string())
            );
            Ok(Output::ok(harness::emit_expansion_table(
                &approx,
                range(n_range)?,
                table_format(g),
            )))
        }
        Command::Family {
            preset,
            form: f,
            n,
            words,
        } => {
            let (fm, default_range) = match (preset, f) {
                (Some(p), _) => {
                    let p: Preset = p.parse()?;
                    (p.form(), p.default_range())
                }
                (None, Some(f)) => (form(f)?, Preset::Title.default_range()),
                (None, None) => (Preset::Title.form(), Preset::Title.default_range()),
            };
            let mut cfg = ExperimentConfig::new(fm, default_range);
            if let Some(n) = n {
                cfg.n_range = range(n)?;
            }
            cfg.word_cap = g.word_cap;
            cfg.digit_budget = g.digit_budget;
            cfg.pell_period_cap = g.pell_cap;
            cfg.jobs = g.jobs;
            cfg.keep_words = *words;
            cfg.format = table_format(g);
            let run = harness::run_family(&cfg)?;
            let mins: Vec<String> = run
                .suffix_min
                .iter()
                .map(|m| m.map_or("-".into(), |v| v.to_string()))
                .collect();
            eprintln!("suffix-min r: {}", mins.join(" "));
            let bad = run.records.iter().find(|r| {
                r.palindrome_ok == Some(false) || r.notes.iter().any(|n| n.starts_with("pell-mismatch"))
            });
            let text = match cfg.format {
                Format::Json => json_out(serde_json::to_value(&run).expect("json")),
                Format::Csv => harness::emit(&run.records, Format::Csv),
            };
            Ok(Output {
                text,
                capped: run.any_capped(),
                invariant_failure: bad.map(|r| format!("invariant violated at n = {}", r.n)),
            })
        }
        Command::Identities => {
            let report = harness::run_identity_checks()?;
            let text = if as_json {
                json_out(serde_json::to_value(&report).expect("json"))
            } else {
                let mut t = format!("checked {} expansions, {} failures\n", report.checked, report.failures.len());
                for f in &report.failures {
                    writeln!(t, "{} n={} D={}: expected {} got {}", f.family, f.n, f.radicand, f.expected, f.got)
                        .unwrap();
                }
                t
            };
            let mut o = Output::ok(text);
            if !report.ok() {
                o.invariant_failure = Some("identity mismatch".into());
            }
            Ok(o)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        let written = match &cli.global.out {
            Some(path) => std::fs::write(path, &o.text),
            None => std::io::stdout().write_all(o.text.as_bytes()),
        };
        written.map_err(|e| Failure::Input(Error::InvalidArgument(format!("write failed: {e}"))))?;
        if let Some(msg) = o.invariant_failure {
            return Err(Failure::Invariant(msg));
        }
        if o.capped && cli.global.strict {
            return Err(Failure::Cap);
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Cap) => {
            eprintln!("error: resource cap hit");
            ExitCode::from(3)
        }
    }
}
