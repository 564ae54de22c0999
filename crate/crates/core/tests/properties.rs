use lcskpp::oracle::{count_match_pairs_naive, lcs_classic, lcsk_dp, lcskpp_dp, validate_chain};
use lcskpp::{build_events, find_match_pairs, lcskpp, sweep, Mode};
use proptest::prelude::*;

fn string(alphabet: usize, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec((0..alphabet as u8).prop_map(|c| b'A' + c), 0..=max_len)
}

fn instance() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, usize)> {
    prop_oneof![Just(2usize), Just(4), Just(20)]
        .prop_flat_map(|a| (string(a, 40), string(a, 40), 1usize..=6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn sweep_matches_direct_recurrence((x, y, k) in instance()) {
        prop_assert_eq!(sweep(&x, &y, k, Mode::Lcskpp).unwrap().value, lcskpp_dp(&x, &y, k).unwrap());
        prop_assert_eq!(sweep(&x, &y, k, Mode::Lcsk).unwrap().value, lcsk_dp(&x, &y, k).unwrap());
    }

    #[test]
    fn reconstruction_is_a_valid_chain((x, y, k) in instance()) {
        let res = sweep(&x, &y, k, Mode::Lcskpp).unwrap();
        let (xi, yj): (Vec<_>, Vec<_>) = res.reconstruct().into_iter().unzip();
        prop_assert!(validate_chain(&x, &y, k, &xi, &yj));
        prop_assert_eq!(xi.len() as u64, res.value);
    }

    #[test]
    fn bounds_symmetry_and_monotonicity((x, y, k) in instance()) {
        let v = lcskpp(&x, &y, k).unwrap();
        prop_assert!(v <= x.len().min(y.len()) as u64);
        if k > x.len().min(y.len()) {
            prop_assert_eq!(v, 0);
        }
        prop_assert_eq!(v, lcskpp(&y, &x, k).unwrap());
        prop_assert!(lcskpp(&x, &y, k + 1).unwrap() <= v);
        prop_assert!(k as u64 * sweep(&x, &y, k, Mode::Lcsk).unwrap().value <= v);
    }

    #[test]
    fn k_one_is_lcs(x in string(4, 120), y in string(4, 120)) {
        prop_assert_eq!(lcskpp(&x, &y, 1).unwrap(), lcs_classic(&x, &y));
    }

    #[test]
    fn pair_count_matches_double_loop((x, y, k) in instance()) {
        prop_assert_eq!(find_match_pairs(&x, &y, k).unwrap().len(), count_match_pairs_naive(&x, &y, k));
    }

    #[test]
    fn identity_scores_full_length(x in string(4, 60), k in 1usize..8) {
        prop_assume!(x.len() >= k);
        prop_assert_eq!(lcskpp(&x, &x, k).unwrap(), x.len() as u64);
    }

    #[test]
    fn deterministic_output((x, y, k) in instance()) {
        let a = sweep(&x, &y, k, Mode::Lcskpp).unwrap();
        let b = sweep(&x, &y, k, Mode::Lcskpp).unwrap();
        prop_assert_eq!(build_events(&a.pairs, k), build_events(&b.pairs, k));
        prop_assert_eq!(a.reconstruct(), b.reconstruct());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn oracle_relations((x, y, k) in instance()) {
        let v = lcskpp_dp(&x, &y, k).unwrap();
        prop_assert_eq!(v, lcskpp_dp(&y, &x, k).unwrap());
        prop_assert!(v >= k as u64 * lcsk_dp(&x, &y, k).unwrap());
        prop_assert_eq!(lcskpp_dp(&x, &y, 1).unwrap(), lcs_classic(&x, &y));
    }
}
