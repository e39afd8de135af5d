mod common;

use common::{int_matrix, Q};
use lefschetz_core::harness::{
    build_thm31, build_thm41, ci_hilbert_certificate, ci_minors_check, koszul_hilbert_function,
    verify_thm41, MinorGate, Status, Thm31Family, Thm31Instance, Thm41Family,
};
use lefschetz_core::{ArtinianAlgebra, Error, Verdict};
use proptest::prelude::*;

/// Shape-conforming matrices with tiny entries, so singular minors are common.
fn thm31_instance() -> impl Strategy<Value = Thm31Instance> {
    (2usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(1usize..=2, n), prop::collection::vec(-2i64..=2, n * n)).prop_filter_map(
            "zero row",
            move |(degrees, mut entries)| {
                for i in 0..n - 1 {
                    for j in i + 2..n {
                        entries[i * n + j] = 0;
                    }
                }
                Thm31Instance::new(degrees, int_matrix(n, n, &entries)).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn minor_gate_decides_complete_intersection(inst in thm31_instance()) {
        let gate = ci_minors_check(inst.matrix(), MinorGate::AllPrincipal).unwrap();
        let ci = match ArtinianAlgebra::build(inst.n(), Q, build_thm31(&inst), None) {
            Ok(a) => ci_hilbert_certificate(&a, &inst.generator_degrees()).unwrap(),
            Err(Error::NotArtinian { .. }) => false,
            Err(e) => panic!("{e}"),
        };
        prop_assert_eq!(gate, ci);
        if ci {
            let a = ArtinianAlgebra::build(inst.n(), Q, build_thm31(&inst), None).unwrap();
            prop_assert_eq!(a.hilbert_function(), koszul_hilbert_function(&inst.generator_degrees()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn verified_instances_have_peak_many_blocks(seed in any::<u64>()) {
        let mut family = Thm31Family::new(Q);
        family.max_degree = 2;
        family.coeff_range = 50;
        let r = family.verify(seed, 3).unwrap();
        prop_assert_eq!(r.status(), Status::Pass);
        let peak = r.hilbert_function.iter().copied().max().unwrap();
        prop_assert_eq!(r.jordan_type.as_ref().unwrap().len(), peak);
        prop_assert_eq!(r.jordan_type.as_ref(), r.dual_of_hilbert.as_ref());
    }

    #[test]
    fn records_are_reproducible(seed in any::<u64>()) {
        let mut family = Thm31Family::new(Q);
        family.max_degree = 2;
        let first = family.verify(seed, 2).unwrap();
        let again = family.verify(seed, 2).unwrap();
        prop_assert_eq!(format!("{first:?}"), format!("{again:?}"));
    }
}

#[test]
fn leading_minors_miss_a_shared_factor() {
    // x(x + y), y·x
    let m = int_matrix(2, 2, &[1, 1, 1, 0]);
    assert!(ci_minors_check(&m, MinorGate::Leading).unwrap());
    assert!(!ci_minors_check(&m, MinorGate::AllPrincipal).unwrap());
    let inst = Thm31Instance::new(vec![1, 1], m).unwrap();
    assert!(matches!(
        ArtinianAlgebra::build(2, Q, build_thm31(&inst), None),
        Err(Error::NotArtinian { .. })
    ));
}

#[test]
fn second_family_examples() {
    let linear = build_thm41(Q, &[vec![1], vec![1]], 0, 1000).unwrap();
    let r = verify_thm41(&linear, 2, 0).unwrap();
    assert_eq!(r.hilbert_function, vec![1]);
    assert_eq!(r.verdict, Some(Verdict::SlpCertified));

    let powers = build_thm41(Q, &[vec![2], vec![3]], 1, 1000).unwrap();
    assert_eq!(powers.degrees(), vec![2, 3]);
    assert_eq!(powers.forms()[0].len(), 1);
    let r = verify_thm41(&powers, 3, 1).unwrap();
    assert_eq!(r.hilbert_function, vec![1, 2, 2, 1]);
    assert_eq!(r.status(), Status::Pass);
}

#[test]
fn second_family_draws_certify_quickly() {
    let family = Thm41Family {
        max_degree: 3,
        ..Thm41Family::new(Q)
    };
    for seed in 0..10 {
        let inst = family.draw(seed).unwrap();
        assert!(inst.retries() <= 3, "seed {seed} needed {} retries", inst.retries());
    }
}
