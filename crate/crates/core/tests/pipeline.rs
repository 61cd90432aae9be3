use num_bigint::BigUint;
use powersum_cf::expansion::{hypothesis_h_decide, Verdict};
use powersum_cf::harness::{run_family, ExperimentConfig};
use powersum_cf::{period_length, PowerSumForm};
use proptest::prelude::*;

fn positive_form() -> impl Strategy<Value = PowerSumForm> {
    prop::collection::vec((1i64..6, 2i64..8), 1..4).prop_map(|terms| {
        PowerSumForm::from_ints(&terms).unwrap() + PowerSumForm::from_ints(&[(1, 1)]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_rows_agree_with_direct_computation(f in positive_form(), jobs in 1usize..4) {
        let mut cfg = ExperimentConfig::new(f.clone(), 1..=6);
        cfg.jobs = jobs;
        let run = run_family(&cfg).unwrap();
        for row in &run.records {
            let d = BigUint::try_from(f.eval_integer(row.n).unwrap()).unwrap();
            prop_assert_eq!(&row.radicand, &d);
            match period_length(&d) {
                Ok(stats) => {
                    prop_assert_eq!(row.r, Some(stats.r));
                    prop_assert_eq!(row.pell_sign, Some(if stats.r % 2 == 0 { 1 } else { -1 }));
                }
                Err(_) => prop_assert!(row.is_square),
            }
        }
    }

    #[test]
    fn squares_plus_small_terms_fail_hypothesis(
        h in prop::collection::vec((1i64..5, 2i64..6), 1..3),
        c in 1i64..9,
    ) {
        // f(2n) = h(2n)^2 + c, and h(2n) is again a power sum in n.
        let h = PowerSumForm::from_ints(&h).unwrap();
        let f = &(&h * &h) + &PowerSumForm::from_ints(&[(c, 1)]).unwrap();
        let f_text = f.to_string();
        let rep = hypothesis_h_decide(&f).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Fails, "{}", f_text);
    }
}
