//! The closed forms sqrt(h^2 + 1) = [h; {2h}] and
//! sqrt(v^2 w^2 + 2w) = [vw; {v, 2vw}] over a grid of power sums.

use powersum_cf::harness::identities::run_identity_checks;

fn main() -> powersum_cf::Result<()> {
    let report = run_identity_checks()?;
    println!("{} expansions checked, {} failures", report.checked, report.failures.len());
    for f in &report.failures {
        println!("  {} at n = {}: expected {}, got {}", f.family, f.n, f.expected, f.got);
    }
    Ok(())
}
