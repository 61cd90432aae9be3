//! Partial quotients and approximation exponents of the convergents of
//! sqrt(f(n)) with q_j < exp(c n).

use powersum_cf::growth::partial_quotient_profile;
use powersum_cf::PowerSumForm;

fn main() -> powersum_cf::Result<()> {
    let f: PowerSumForm = "2*4^n + 1".parse()?;
    for n in [6, 10, 14] {
        let Some(p) = partial_quotient_profile(&f, n, 0.5)? else {
            println!("n = {n}: square");
            continue;
        };
        println!(
            "n = {n}, D = {}: {} convergents below exp({:.1}), max quotient {}",
            p.radicand,
            p.entries.len(),
            0.5 * n as f64,
            p.max_partial_quotient
        );
        for e in p.entries.iter().take(8) {
            let exp = e.exponent.map_or("-".into(), |x| format!("{x:.3}"));
            println!("  j = {:2}  a_(j+1) = {:6}  ln q = {:7.3}  exponent {exp}", e.j, e.next_quotient, e.ln_q);
        }
    }
    Ok(())
}
