mod common;

use common::{random_form, Q};
use lefschetz_core::poly::{monomial_count, monomials_of_degree};
use lefschetz_core::sampling::stream_rng;
use lefschetz_core::{FactoredGenerator, LinearForm, Poly};
use proptest::prelude::*;

fn factors() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, u32)>)> {
    (1usize..4).prop_flat_map(|n| {
        let factor = (prop::collection::vec(-5i64..=5, n), 1u32..4)
            .prop_filter("nonzero form", |(c, _)| c.iter().any(|&x| x != 0));
        (Just(n), prop::collection::vec(factor, 1..4))
    })
}

fn generator(list: &[(Vec<i64>, u32)]) -> FactoredGenerator {
    FactoredGenerator::new(
        list.iter()
            .map(|(c, m)| (LinearForm::from_i64(Q, c).unwrap(), *m))
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_ignores_factor_order((_, list) in factors(), rot in 0usize..4) {
        let mut shuffled = list.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        prop_assert_eq!(generator(&list).expand(), generator(&shuffled).expand());
    }

    #[test]
    fn expansion_degree_is_total_multiplicity((_, list) in factors()) {
        let g = generator(&list);
        let total: u32 = list.iter().map(|f| f.1).sum();
        prop_assert_eq!(g.degree(), total as usize);
        prop_assert_eq!(g.expand().homogeneous_degree(), Some(total as usize));
    }

    #[test]
    fn expansion_matches_repeated_multiplication((n, list) in factors()) {
        let mut naive = Poly::one(n, Q);
        for (c, m) in &list {
            let l = LinearForm::from_i64(Q, c).unwrap().to_poly();
            for _ in 0..*m {
                naive = naive.multiply(&l).unwrap();
            }
        }
        prop_assert_eq!(generator(&list).expand(), naive);
    }

    #[test]
    fn coefficient_vectors_round_trip(n in 1usize..4, d in 0usize..5, seed in any::<u64>()) {
        let f = random_form(Q, n, d, 7, &mut stream_rng(seed, 0));
        let v = f.coefficient_vector(d).unwrap();
        prop_assert_eq!(v.len(), monomial_count(n, d));
        prop_assert_eq!(monomials_of_degree(n, d).len(), v.len());
        prop_assert_eq!(Poly::from_coefficient_vector(n, Q, d, &v).unwrap(), f);
    }

    #[test]
    fn products_are_commutative_and_graded(n in 1usize..4, d in 0usize..3, e in 0usize..3, seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        let f = random_form(Q, n, d, 5, &mut rng);
        let g = random_form(Q, n, e, 5, &mut rng);
        let fg = f.multiply(&g).unwrap();
        prop_assert_eq!(&fg, &g.multiply(&f).unwrap());
        prop_assert_eq!(fg.homogeneous_degree(), Some(d + e));
    }
}
