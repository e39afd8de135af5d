mod common;

use common::{int_matrix, to_oracle_rows, to_oracle_vec, Q};
use lefschetz_core::{FieldSpec, Matrix};
use lefschetz_oracles::gauss_jordan;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |e| int_matrix(r, c, &e))
    })
}

/// Product of an `r×k` and a `k×c` factor, so rank deficiency is common.
fn low_rank_matrix() -> impl Strategy<Value = Matrix> {
    (2usize..12, 1usize..5, 2usize..12).prop_flat_map(|(r, k, c)| {
        (
            prop::collection::vec(-9i64..=9, r * k),
            prop::collection::vec(-999_999i64..=999_999, k * c),
        )
            .prop_map(move |(a, b)| int_matrix(r, k, &a).mul(&int_matrix(k, c, &b)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_plus_nullity_is_column_count(m in small_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let r = m.rref();
        prop_assert_eq!(r.rank, r.pivot_columns.len());
        prop_assert!(r.pivot_columns.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(r.reduced.rref().reduced, r.reduced);
    }

    #[test]
    fn prime_rank_never_exceeds_rational_rank(
        (r, c, entries) in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-1_000_000_000i64..=1_000_000_000, r * c))
        })
    ) {
        // entries stay below p / 2 in absolute value
        let fp = FieldSpec::prime(2_147_483_647).unwrap();
        let over_q = int_matrix(r, c, &entries);
        let over_p = Matrix::from_fn(fp, r, c, |i, j| fp.from_i64(entries[i * c + j])).unwrap();
        prop_assert!(over_p.rank() <= over_q.rank());
    }

    #[test]
    fn rref_matches_plain_gauss_jordan(m in low_rank_matrix()) {
        let r = m.rref();
        let (rows, pivots) = gauss_jordan(&to_oracle_rows(&m), m.cols());
        prop_assert_eq!(&r.pivot_columns, &pivots);
        for (i, row) in rows.iter().enumerate() {
            prop_assert_eq!(&to_oracle_vec(r.reduced.row(i)), row);
        }
        for i in rows.len()..m.rows() {
            prop_assert!(r.reduced.row(i).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kernel_of_low_rank_products(m in low_rank_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }
}

#[test]
fn kernel_of_one_relation() {
    let m = int_matrix(1, 2, &[1, 1]);
    let k = m.kernel_basis();
    assert_eq!(k.len(), 1);
    assert_eq!(k[0][0], -&k[0][1]);
    assert!(!k[0][0].is_zero());
    assert_eq!(Matrix::zero(Q, 2, 3).kernel_basis().len(), 3);
}
