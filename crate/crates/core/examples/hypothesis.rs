//! Decide whether f(2n + j) is a square of a power sum up to a small remainder.
//!
//!     cargo run --example hypothesis -- "9^n + 2*3^n + 1"

use powersum_cf::expansion::{growth_exponent, hypothesis_h_decide, BranchOutcome};
use powersum_cf::PowerSumForm;

fn main() -> powersum_cf::Result<()> {
    let forms: Vec<String> = match std::env::args().nth(1) {
        Some(f) => vec![f],
        None => ["2*4^n + 1", "4^n + 1", "9^n + 2*3^n + 1", "4^n + 2^n + 1", "5^n + 2^n"]
            .map(String::from)
            .to_vec(),
    };
    for text in forms {
        let f: PowerSumForm = text.parse()?;
        let report = hypothesis_h_decide(&f)?;
        println!("{f}: {:?}", report.verdict);
        for (j, branch) in report.branches.iter().enumerate() {
            match branch {
                BranchOutcome::Witness(w) => {
                    let composed = f.compose_affine(w.j)?;
                    let ge = growth_exponent(&w.g, &composed, 1..=12)?;
                    println!(
                        "  j = {j}: f(2n+{j}) = ({})^2 + ({}), growth exponent {:.4}, delta bound {}",
                        w.h,
                        w.g,
                        ge.value(),
                        w.delta_bound
                    );
                }
                other => println!("  j = {j}: {other:?}"),
            }
        }
    }
    Ok(())
}
