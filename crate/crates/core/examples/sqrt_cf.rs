//! Continued fraction, period statistics and convergents of sqrt(D).
//!
//!     cargo run --example sqrt_cf -- 129

use num_bigint::BigUint;
use powersum_cf::surd::convergent_stream;
use powersum_cf::{cf_sqrt, period_length};

fn main() -> powersum_cf::Result<()> {
    let d: BigUint = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("D must be a positive integer"))
        .unwrap_or_else(|| BigUint::from(129u32));

    let e = cf_sqrt(&d, 64)?;
    match &e.period {
        Some(w) => {
            let w: Vec<String> = w.iter().map(ToString::to_string).collect();
            println!("sqrt({d}) = [{}; {{{}}}]", e.a0, w.join(", "));
        }
        None => println!("sqrt({d}) = [{}; ...] (period longer than 64)", e.a0),
    }

    let stats = period_length(&d)?;
    println!(
        "r = {}, r/(sqrt(D) ln D) = {:.6}, palindrome: {}",
        stats.r, stats.bound_ratio, stats.palindrome_ok
    );

    println!("\n j  p_j  q_j  p_j^2 - D q_j^2");
    for step in convergent_stream(&d)?.take(e.r as usize) {
        let c = &step.convergent;
        println!("{:2}  {}  {}  {}", c.j, c.p, c.q, step.norm);
    }
    Ok(())
}
