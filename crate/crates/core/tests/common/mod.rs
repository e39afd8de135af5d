#![allow(dead_code)]

use std::sync::Arc;

use lefschetz_core::harness::{build_thm31, monomial_ci, Thm31Family};
use lefschetz_core::poly::monomials_of_degree;
use lefschetz_core::sampling::stream_rng;
use lefschetz_core::{ArtinianAlgebra, Error, FieldSpec, LinearForm, Matrix, Poly, Scalar};
use lefschetz_oracles::Q as Rat;
use rand::Rng;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn var(n: usize, i: usize) -> Poly {
    Poly::variable(n, Q, i)
}

pub fn lin(c: &[i64]) -> LinearForm {
    LinearForm::from_i64(Q, c).unwrap()
}

pub fn algebra(n: usize, gens: Vec<Poly>) -> Arc<ArtinianAlgebra> {
    Arc::new(ArtinianAlgebra::build(n, Q, gens, None).unwrap())
}

pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_fn(Q, rows, cols, |i, j| Q.from_i64(entries[i * cols + j])).unwrap()
}

pub fn to_oracle_rows(m: &Matrix) -> Vec<Vec<Rat>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.as_rational().unwrap().clone()).collect())
        .collect()
}

pub fn to_oracle_vec(v: &[Scalar]) -> Vec<Rat> {
    v.iter().map(|x| x.as_rational().unwrap().clone()).collect()
}

/// Random nonzero homogeneous form of degree `d` with coefficients in `[−range, range]`.
pub fn random_form<R: Rng>(field: FieldSpec, n: usize, d: usize, range: i64, rng: &mut R) -> Poly {
    loop {
        let terms = monomials_of_degree(n, d)
            .into_iter()
            .map(|m| (m, field.from_i64(rng.gen_range(-range..=range))));
        let f = Poly::from_terms(n, field, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_linear<R: Rng>(n: usize, range: i64, rng: &mut R) -> LinearForm {
    LinearForm::from_poly(&random_form(Q, n, 1, range, rng)).unwrap()
}

/// Small Artinian algebras over `Q` (dimension at most 27) of four kinds:
/// monomial complete intersections, complete intersections of random forms,
/// instances of the `x_i^{d_i} l_i` family, and monomial complete
/// intersections cut down by an extra random quadric.
pub fn small_algebra(seed: u64) -> Arc<ArtinianAlgebra> {
    let mut rng = stream_rng(seed, 0);
    for attempt in 0u64.. {
        let kind = rng.gen_range(0..4);
        let n = rng.gen_range(1..=3usize);
        let exps: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let gens = match kind {
            0 => monomial_ci(Q, &exps),
            1 => exps.iter().map(|&e| random_form(Q, n, e, 4, &mut rng)).collect(),
            2 => {
                let mut f = Thm31Family::new(Q);
                f.nvars = vec![2, 3];
                f.max_degree = 2;
                f.coeff_range = 5;
                build_thm31(&f.draw(seed ^ attempt).unwrap().0)
            }
            _ => {
                let mut g = monomial_ci(Q, &exps);
                g.push(random_form(Q, n, 2, 4, &mut rng));
                g
            }
        };
        let nvars = gens[0].nvars();
        match ArtinianAlgebra::build(nvars, Q, gens, None) {
            Ok(a) => return Arc::new(a),
            Err(Error::NotArtinian { .. }) => continue,
            Err(e) => panic!("{e}"),
        }
    }
    unreachable!()
}

/// The Hilbert function with trailing zeros removed.
pub fn trim(h: &[usize]) -> Vec<usize> {
    let end = h.iter().rposition(|&x| x > 0).map_or(0, |e| e + 1);
    h[..end].to_vec()
}
