//! All (X, Y) with |X^2 - D Y^2| < C, then the least Y along a family.
//!
//!     cargo run --example pell_scan

use powersum_cf::growth::{min_y_growth, pell_below_bound, PellQuery, DEFAULT_DIGIT_BUDGET};
use powersum_cf::{fundamental_pell, PowerSumForm};

fn main() -> powersum_cf::Result<()> {
    let scan = pell_below_bound(&PellQuery::new(33u32, 5u32, 100u32))?;
    println!("|X^2 - 33 Y^2| < 5, Y <= 100 (complete: {})", scan.complete);
    for s in &scan.solutions {
        println!("  X = {:4}  Y = {:3}  X^2 - 33 Y^2 = {}", s.x, s.y, s.value);
    }

    let unit = fundamental_pell(&61u32.into())?;
    println!("\nfundamental solution for D = 61: X = {}, Y = {}, norm {}", unit.x, unit.y, unit.value);

    let f: PowerSumForm = "2*4^n + 1".parse()?;
    let growth = min_y_growth(&f, 2, 2..=14, DEFAULT_DIGIT_BUDGET)?;
    println!("\nleast Y with |X^2 - f(n) Y^2| < 2 for f = {f}");
    for r in &growth.records {
        if let (Some(s), Some(ln_y)) = (&r.solution, r.statistic) {
            println!("  n = {:2}  ln Y = {ln_y:10.3}  X^2 - f(n) Y^2 = {}", r.n, s.value);
        }
    }
    println!("slope of ln Y in n: {:.4}", growth.slope.unwrap_or(f64::NAN));
    Ok(())
}
