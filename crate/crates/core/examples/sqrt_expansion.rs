//! Truncated binomial expansion of sqrt(2*4^n + 1) and its certified error.
//!
//!     cargo run --release --example sqrt_expansion

use powersum_cf::expansion::{decay_factor_bounds, sqrt_approx};
use powersum_cf::PowerSumForm;

fn main() -> powersum_cf::Result<()> {
    let f: PowerSumForm = "2*4^n + 1".parse()?;
    let a = sqrt_approx(&f, None)?;
    println!("sqrt({f}) ~ sqrt({}) * ({}) / {}^n", a.alpha_squared, a.f1, a.root_b1);
    println!("k = {}, beta = {:?}", a.k, a.beta);
    if let Some(eb) = &a.error_base {
        println!("predicted error base sqrt(b1) * beta = {eb}");
    }
    println!("\n n  error (lower .. upper)        decay to n+1");
    for n in 2..=16 {
        let e = a.certified_error(n);
        let decay = decay_factor_bounds(&a, n)
            .map(|(lo, hi)| format!("{lo:.4} .. {hi:.4}"))
            .unwrap_or_default();
        println!(
            "{n:2}  {:.6e} .. {:.6e}  {decay}",
            num_traits::ToPrimitive::to_f64(&e.lower).unwrap_or(0.0),
            num_traits::ToPrimitive::to_f64(&e.upper).unwrap_or(0.0),
        );
    }
    Ok(())
}
