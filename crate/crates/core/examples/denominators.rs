//! Reduced denominators of f(n) / b^n.
//!
//!     cargo run --example denominators -- "3^n + 1" 2

use powersum_cf::growth::{denominator_growth, divides_every_root};
use powersum_cf::harness::emit::{emit_denominators, Format};
use powersum_cf::PowerSumForm;

fn main() -> powersum_cf::Result<()> {
    let mut args = std::env::args().skip(1);
    let f: PowerSumForm = args.next().unwrap_or_else(|| "3^n + 1".into()).parse()?;
    let b: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    if divides_every_root(&f, b) {
        println!("# {b} divides every root of {f}: denominators stay bounded");
    }
    let recs = denominator_growth(&f, b, 1..=24)?;
    print!("{}", emit_denominators(&recs, Format::Csv));
    Ok(())
}
