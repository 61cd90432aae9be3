//! Period lengths of sqrt(2*4^n + 1) and their running suffix minimum.
//!
//!     cargo run --release --example title_family -- 24

use powersum_cf::harness::{emit::emit, emit::Format, run_family, ExperimentConfig, Preset};

fn main() -> powersum_cf::Result<()> {
    let top: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let mut cfg = ExperimentConfig::preset(Preset::Title);
    cfg.n_range = 1..=top;
    cfg.jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let run = run_family(&cfg)?;
    print!("{}", emit(&run.records, Format::Csv));

    let mins: Vec<String> = run
        .suffix_min
        .iter()
        .map(|m| m.map_or("-".into(), |m| m.to_string()))
        .collect();
    println!("\nsuffix minimum of r(n): {}", mins.join(" "));
    Ok(())
}
