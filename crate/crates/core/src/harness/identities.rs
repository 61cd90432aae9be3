use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::form::PowerSumForm;
use crate::surd::cf_sqrt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub family: String,
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub radicand: BigUint,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn word_string(a0: &BigUint, period: &[BigUint]) -> String {
    let body: Vec<String> = period.iter().map(|a| a.to_string()).collect();
    format!("[{a0}; {{{}}}]", body.join(", "))
}

fn check(
    report: &mut IdentityReport,
    family: &str,
    n: u64,
    radicand: BigUint,
    a0: BigUint,
    period: Vec<BigUint>,
) -> Result<()> {
    let e = cf_sqrt(&radicand, period.len() + 1)?;
    report.checked += 1;
    let got = match &e.period {
        Some(w) => word_string(&e.a0, w),
        None => format!("[{}; period of length {}]", e.a0, e.r),
    };
    if e.a0 != a0 || e.period.as_deref() != Some(period.as_slice()) {
        report.failures.push(IdentityFailure {
            family: family.to_string(),
            n,
            radicand,
            expected: word_string(&a0, &period),
            got,
        });
    }
    Ok(())
}

fn forms(texts: &[&str]) -> Vec<PowerSumForm> {
    texts.iter().map(|t| t.parse().expect("grid form parses")).collect()
}

fn positive_value(f: &PowerSumForm, n: u64) -> Result<BigUint> {
    let v = f.eval_integer(n)?;
    Ok(crate::arith::to_biguint(&v).expect("grid forms are positive"))
}

/// Expand both closed-form families over a grid of small power sums and
/// `n = 1..=10`:
///
/// - `sqrt(h^2 + 1) = [h; {2h}]`;
/// - `sqrt(v^2 w^2 + 2w) = [vw; {v, 2vw}]`.
pub fn run_identity_checks() -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    let hs = forms(&["2^n", "3^n", "2^n + 1", "3^n + 2^n", "2*5^n + 3", "7^n + 4*2^n + 1"]);
    let vs = forms(&["1", "2^n", "3^n + 1", "2*2^n", "5^n + 3^n"]);
    let ws = forms(&["2^n", "3^n", "5^n + 1", "1", "2*7^n"]);
    for n in 1..=10u64 {
        for h in &hs {
            let hv = positive_value(h, n)?;
            let radicand = &hv * &hv + BigUint::one();
            let period = vec![&hv << 1u32];
            check(&mut report, &format!("h^2+1, h = {h}"), n, radicand, hv, period)?;
        }
        for v in &vs {
            for w in &ws {
                let vv = positive_value(v, n)?;
                let wv = positive_value(w, n)?;
                let vw = &vv * &wv;
                let radicand = &vw * &vw + (&wv << 1u32);
                let period = vec![vv.clone(), &vw << 1u32];
                let family = format!("v^2w^2+2w, v = {v}, w = {w}");
                check(&mut report, &family, n, radicand, vw, period)?;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_grid_passes() {
        let report = run_identity_checks().unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        assert_eq!(report.checked, 10 * (6 + 25));
    }

    #[test]
    fn single_instances() {
        // h = 2^n + 1 at n = 3 and h = 3^n at n = 2 both give 82 = 9^2 + 1.
        let e = cf_sqrt(&BigUint::from(82u32), 10).unwrap();
        assert_eq!(e.a0, BigUint::from(9u32));
        assert_eq!(e.period.unwrap(), [BigUint::from(18u32)]);
        // v = 1, w = 2^n at n = 3: 64 + 16 = 80 = [8; {1, 16}].
        let e = cf_sqrt(&BigUint::from(80u32), 10).unwrap();
        assert_eq!(e.period.unwrap(), [BigUint::from(1u32), BigUint::from(16u32)]);
    }

    #[test]
    fn mismatch_is_reported() {
        let mut report = IdentityReport::default();
        check(
            &mut report,
            "bogus",
            1,
            BigUint::from(33u32),
            BigUint::from(5u32),
            vec![BigUint::from(10u32)],
        )
        .unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].got, "[5; period of length 4]");
    }
}
