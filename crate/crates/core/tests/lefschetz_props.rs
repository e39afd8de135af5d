mod common;

use std::cmp::Ordering;

use common::{random_form, random_linear, small_algebra, var, Q};
use lefschetz_core::graded::principal_ideal;
use lefschetz_core::lefschetz::{
    certify_sl_element, compare_partitions, dual_partition, find_sl_element, full_rank_profile, is_unimodal,
    jordan_bound_holds, jordan_type,
};
use lefschetz_core::sampling::{stream_rng, Sampler};
use lefschetz_core::{Partition, Verdict};
use lefschetz_oracles::{conjugate, jordan_chain_type, NaiveQuotient};
use proptest::prelude::*;
use rand::Rng;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..12, 0..10)
        .prop_map(|mut parts| {
            let mut total = 0;
            parts.retain(|&p| {
                total += p;
                total <= 40
            });
            Partition::new(parts)
        })
}

fn two_partitions_of_equal_weight() -> impl Strategy<Value = (Partition, Partition)> {
    (1usize..25).prop_flat_map(|w| {
        let split = move |cuts: Vec<usize>| {
            let mut cuts: Vec<usize> = cuts.into_iter().map(|c| c % w).filter(|&c| c > 0).collect();
            cuts.sort_unstable();
            cuts.dedup();
            cuts.push(w);
            let mut prev = 0;
            Partition::new(cuts.into_iter().map(|c| { let p = c - prev; prev = c; p }).collect())
        };
        (
            prop::collection::vec(any::<usize>(), 0..8).prop_map(split),
            prop::collection::vec(any::<usize>(), 0..8).prop_map(split),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(p in partition()) {
        let d = dual_partition(&p);
        prop_assert_eq!(d.weight(), p.weight());
        prop_assert_eq!(d.parts(), &conjugate(p.parts())[..]);
        prop_assert_eq!(dual_partition(&d), p);
    }

    #[test]
    fn order_is_total_and_antisymmetric((p, r) in two_partitions_of_equal_weight()) {
        let forward = compare_partitions(&p, &r).unwrap();
        prop_assert_eq!(forward, compare_partitions(&r, &p).unwrap().reverse());
        prop_assert_eq!(forward == Ordering::Equal, p == r);
        if p.len() != r.len() {
            prop_assert_eq!(forward == Ordering::Greater, p.len() < r.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jordan_criterion_agrees_with_rank_profile(seed in any::<u64>(), use_variable in any::<bool>()) {
        let a = small_algebra(seed);
        let z = if use_variable {
            lefschetz_core::LinearForm::variable(a.nvars(), Q, 0)
        } else {
            random_linear(a.nvars(), 9, &mut stream_rng(seed, 1))
        };
        let certified = certify_sl_element(&a, &z).unwrap();
        let profile = full_rank_profile(a.as_ref(), &z).unwrap();
        prop_assert_eq!(certified.criteria_agree, Some(true));
        prop_assert_eq!(certified.verdict == Verdict::SlpCertified, profile.all_full_rank());
        if certified.verdict == Verdict::SlpCertified {
            prop_assert!(certified.unimodal);
            prop_assert_eq!(&certified.jordan_type, &certified.dual_of_hilbert);
        }
    }

    #[test]
    fn jordan_type_matches_explicit_chains(seed in any::<u64>()) {
        let a = small_algebra(seed);
        let mut rng = stream_rng(seed, 2);
        let y = random_form(Q, a.nvars(), rng.gen_range(1..=2), 4, &mut rng);
        let naive = NaiveQuotient::build(a.nvars(), a.generators(), a.socle_degree() + 1).unwrap();
        let chains = jordan_chain_type(&naive.multiplication_matrix(&y));
        let rank_based = jordan_type(a.as_ref(), &y).unwrap();
        prop_assert_eq!(rank_based.parts(), &chains[..]);
    }

    #[test]
    fn dual_of_hilbert_dominates_every_jordan_type(seed in any::<u64>(), degree in 1usize..=2, use_variable in any::<bool>()) {
        let a = small_algebra(seed);
        prop_assume!(is_unimodal(&a.hilbert_function()));
        let y = if use_variable {
            var(a.nvars(), 0).pow(degree as u32)
        } else {
            random_form(Q, a.nvars(), degree, 4, &mut stream_rng(seed, 3))
        };
        prop_assert!(jordan_bound_holds(&a, &y).unwrap());
    }

    #[test]
    fn part_count_is_dimension_of_the_cokernel(seed in any::<u64>()) {
        let a = small_algebra(seed);
        let z = random_linear(a.nvars(), 9, &mut stream_rng(seed, 4)).to_poly();
        let parts = jordan_type(a.as_ref(), &z).unwrap().len();
        let image = principal_ideal(&a, &z).unwrap().total_dim();
        prop_assert_eq!(parts, a.total_dim() - image);
    }

    #[test]
    fn search_is_reproducible(seed in any::<u64>()) {
        let a = small_algebra(seed);
        let s = Sampler::for_search(Q);
        let first = find_sl_element(a.as_ref(), 3, seed, &s).unwrap();
        prop_assert_eq!(first, find_sl_element(a.as_ref(), 3, seed, &s).unwrap());
    }
}
