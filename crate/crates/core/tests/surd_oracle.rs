mod common;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use powersum_cf::surd::fundamental_pell;
use powersum_cf::{cf_sqrt, period_length};
use rayon::prelude::*;

#[test]
fn recurrence_matches_numeric_oracle() {
    for d in (2..=3000u64).filter(|&d| !common::is_square(d)) {
        let exact = cf_sqrt(&BigUint::from(d), usize::MAX).unwrap();
        let numeric = common::numeric_cf_prefix(d, 80);
        assert!(numeric.len() >= 12, "D={d}: oracle too coarse");
        let mut exact_prefix = vec![exact.a0.clone()];
        while exact_prefix.len() < numeric.len() {
            exact_prefix.extend(exact.period.clone().unwrap());
        }
        assert_eq!(numeric[..], exact_prefix[..numeric.len()], "D={d}");
    }
}

#[test]
fn streaming_period_matches_full_expansion() {
    let bad: Vec<u64> = (2..=100_000u64)
        .into_par_iter()
        .filter(|&d| !common::is_square(d))
        .filter(|&d| {
            let d = BigUint::from(d);
            let stats = period_length(&d).unwrap();
            let full = cf_sqrt(&d, usize::MAX).unwrap();
            stats.r != full.r || Some(stats.palindrome_ok) != full.has_palindromic_period()
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

/// Smallest `Y <= limit` with `X^2 - D Y^2 = +-1` by direct search.
fn brute_unit(d: u64, limit: u64) -> Option<(u64, u64, i64)> {
    (1..=limit).find_map(|y| {
        let t = d as u128 * y as u128 * y as u128;
        let x = (t as f64).sqrt() as u128;
        (x.saturating_sub(1)..=x + 1)
            .find(|&x| x * x == t + 1 || x * x + 1 == t)
            .map(|x| (x as u64, y, (x * x) as i64 - t as i64))
    })
}

#[test]
fn fundamental_solution_is_minimal() {
    const LIMIT: u64 = 20_000;
    (2..=2000u64).into_par_iter().filter(|&d| !common::is_square(d)).for_each(|d| {
        let sol = fundamental_pell(&BigUint::from(d)).unwrap();
        let r = period_length(&BigUint::from(d)).unwrap().r;
        assert_eq!(sol.value, (if r.is_multiple_of(2) { 1 } else { -1 }).into(), "D={d}");
        match (sol.y.to_u64().filter(|&y| y <= LIMIT), brute_unit(d, LIMIT)) {
            (Some(y), Some(b)) => assert_eq!(
                b,
                (sol.x.to_u64().unwrap(), y, sol.value.to_i64().unwrap()),
                "D={d}"
            ),
            (None, None) => {}
            (y, b) => panic!("D={d}: solver Y={y:?}, brute force {b:?}"),
        }
    });
}
