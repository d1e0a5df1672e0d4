use mertens_lab::claims::{floored_parity_scan, floored_parity_sums, overlap_scan};
use mertens_lab::{
    census_scan, check_bound, classify_census, eval_series, integer_kth_root, mertens_prefix,
    mobius, overlap_count, partial_sum_trace, root_gap_check, sieve_mobius_range, BoundCoeffs,
    BoundScale, BoundSpec, ComplexPoint, EvalMode, Family, OverlapKind, Quantity, SeriesSpec,
    SieveOpts,
};
use proptest::prelude::*;

fn opts() -> SieveOpts {
    SieveOpts::default()
}

/// `r^k <= n`, treating overflow as "exceeds n".
fn pow_at_most(r: u64, k: u32, n: u64) -> bool {
    r.checked_pow(k).is_some_and(|p| p <= n)
}

proptest! {
    #[test]
    fn sieve_matches_trial_division(lo in 1u64..2_000_000, len in 0u64..300) {
        let seg = sieve_mobius_range(lo, lo + len).unwrap();
        for (i, &mu) in seg.values.iter().enumerate() {
            let n = lo + i as u64;
            prop_assert_eq!(mu, mobius(n).unwrap(), "mismatch at n = {}", n);
        }
    }

    #[test]
    fn integer_roots_bracket(n in any::<u64>(), k in 2u32..80) {
        let r = integer_kth_root(n, k).unwrap();
        prop_assert!(pow_at_most(r, k, n), "{r}^{k} > {n}");
        prop_assert!(!pow_at_most(r + 1, k, n), "{}^{k} <= {n}", r + 1);
    }

    #[test]
    fn census_partition_and_identity(n in 1u64..20_000) {
        let c = classify_census(n, &opts()).unwrap();
        prop_assert!(c.partition_holds());
        prop_assert!(c.mertens_identity_holds());
    }

    #[test]
    fn floored_series_brackets_real(
        n in 4u64..200_000,
        family in prop::sample::select(vec![Family::F1, Family::F2, Family::F4]),
    ) {
        let real = eval_series(SeriesSpec { family, mode: EvalMode::Real, n }).unwrap();
        let floored = eval_series(SeriesSpec { family, mode: EvalMode::Floored, n }).unwrap();
        prop_assert_eq!(real.term_count, floored.term_count);
        let count = real.term_count as f64;
        prop_assert!(real.value >= floored.value - 1e-6);
        prop_assert!(real.value < floored.value + count + 1e-6);
    }

    #[test]
    fn overlap_scan_seeds_at_any_window(
        lo in 4u64..100_000,
        len in 0u64..40,
        kind in prop::sample::select(vec![
            OverlapKind::MultisetExcess,
            OverlapKind::PerfectPowerMultiplicity,
        ]),
    ) {
        overlap_scan(kind, lo, lo + len, |n, count| {
            assert_eq!(count, overlap_count(n, kind).unwrap(), "{kind:?} at n = {n}");
        }).unwrap();
    }

    #[test]
    fn parity_scan_seeds_at_any_window(lo in 1u64..100_000, len in 0u64..40) {
        floored_parity_scan(lo, lo + len, |n, even, odd| {
            assert_eq!((even, odd), floored_parity_sums(n).unwrap(), "n = {n}");
        });
    }

    #[test]
    fn mertens_verdict_matches_brute_force(
        c in 1.05f64..3.0,
        a in 0.05f64..1.0,
        e in 0.0f64..2.0,
    ) {
        let spec = BoundSpec {
            claim_id: "sampled",
            c,
            coeffs: BoundCoeffs { a, b: 0.0, d: 0.0, e },
            scale: BoundScale::CFactor,
        };
        let verdict = check_bound(&spec, Quantity::AbsMertens, 1, 1500, &opts()).unwrap();

        let mut m = 0i64;
        let mut worst = f64::INFINITY;
        let mut at = 0u64;
        let mut first = None;
        for n in 1..=1500u64 {
            m += i64::from(mobius(n).unwrap());
            let margin = spec.bound_at(n) - m.unsigned_abs() as f64;
            if margin < worst {
                worst = margin;
                at = n;
            }
            if margin < 0.0 && first.is_none() {
                first = Some(n);
            }
        }
        prop_assert_eq!(verdict.first_violation, first);
        prop_assert_eq!(verdict.worst_margin, worst);
        prop_assert_eq!(verdict.argmax_n, at);
        prop_assert_eq!(verdict.holds_everywhere, first.is_none());
    }

    #[test]
    fn abel_agrees_with_direct(sigma in 0.3f64..2.0, t in -3.0f64..3.0) {
        let trace =
            partial_sum_trace(ComplexPoint::new(sigma, t), 2000, &[2000], &opts()).unwrap();
        let d = trace.direct_values[0];
        let a = trace.abel_values[0];
        prop_assert!((d - a).norm() <= 1e-9 * (1.0 + d.norm()));
    }

    #[test]
    fn conjugate_argument_conjugates_the_sum(sigma in 0.3f64..2.0, t in 0.0f64..5.0) {
        let up = partial_sum_trace(ComplexPoint::new(sigma, t), 1500, &[1500], &opts()).unwrap();
        let down =
            partial_sum_trace(ComplexPoint::new(sigma, -t), 1500, &[1500], &opts()).unwrap();
        let u = up.direct_values[0];
        let d = down.direct_values[0];
        let scale = 1.0 + u.norm();
        prop_assert!((u.re - d.re).abs() <= 1e-12 * scale);
        prop_assert!((u.im + d.im).abs() <= 1e-12 * scale);
    }

    #[test]
    fn root_gap_bound_always_holds(n in 1u64..1_000_000_000_000) {
        prop_assert!(root_gap_check(n).unwrap().holds);
    }

    #[test]
    fn scans_are_scheduling_invariant(
        segment_len in 129usize..50_000,
        workers in 1usize..9,
        n in 1_000u64..40_000,
    ) {
        let varied = SieveOpts { segment_len, workers };
        let base_trace = mertens_prefix(n, &[n / 2, n], &opts()).unwrap();
        let got_trace = mertens_prefix(n, &[n / 2, n], &varied).unwrap();
        prop_assert_eq!(base_trace, got_trace);

        let mut base_last = None;
        census_scan(n, &opts(), |c| base_last = Some(*c)).unwrap();
        let mut got_last = None;
        census_scan(n, &varied, |c| got_last = Some(*c)).unwrap();
        prop_assert_eq!(base_last, got_last);
    }
}
