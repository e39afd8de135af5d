//! Exact reduced echelon forms over `Q` from modular images.
//!
//! The rows are cleared of denominators, reduced modulo a sequence of word
//! primes, combined by CRT and lifted back by rational reconstruction. A
//! candidate is accepted only after an exact check: every input row lies in
//! its span, and its rank is attained modulo some prime, which bounds the
//! rank over `Q` from below. Reconstruction is tried after every prime and
//! a candidate must also match the next image before the exact check.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{bigint_mod, inv_mod, is_prime_u64, mul_mod, sub_mod, Scalar};

/// Primes between `2^61` and `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime_u64(n))
}

/// Numerators over the least common denominator of a row of rationals.
pub(crate) fn integerize(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let q = |x: &Scalar| x.as_rational().expect("rational entry").clone();
    let den = row.iter().fold(BigInt::one(), |acc, x| {
        let r = q(x);
        if r.is_zero() {
            acc
        } else {
            acc.lcm(r.denom())
        }
    });
    let nums = row
        .iter()
        .map(|x| {
            let r = q(x);
            if r.is_zero() {
                BigInt::zero()
            } else {
                r.numer() * (&den / r.denom())
            }
        })
        .collect();
    (nums, den)
}

/// Numerators over one common denominator for a whole table of rationals.
pub(crate) fn integerize_rows(rows: &[Vec<Scalar>]) -> (Vec<Vec<BigInt>>, BigInt) {
    fn q(x: &Scalar) -> &BigRational {
        x.as_rational().expect("rational entry")
    }
    let mut den = BigInt::one();
    for x in rows.iter().flatten() {
        let r = q(x);
        if !r.is_zero() && !(&den % r.denom()).is_zero() {
            den = den.lcm(r.denom());
        }
    }
    let nums = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = q(x);
                    if r.is_zero() {
                        BigInt::zero()
                    } else {
                        r.numer() * (&den / r.denom())
                    }
                })
                .collect()
        })
        .collect();
    (nums, den)
}

/// A reduced echelon basis over `Q` with a common denominator: row `i` is
/// `numerators[i] / denominator`, given at the free columns only (it is the
/// unit vector at its own pivot and zero at the others).
#[derive(Clone, Debug)]
pub(crate) struct IntegerEchelon {
    pub(crate) cols: usize,
    pub(crate) pivots: Vec<usize>,
    pub(crate) free: Vec<usize>,
    pub(crate) numerators: Vec<Vec<BigInt>>,
    pub(crate) denominator: BigInt,
}

impl IntegerEchelon {
    /// From reduced echelon rows given as rationals.
    pub(crate) fn from_rational_rows(cols: usize, pivots: &[usize], rows: &[Vec<Scalar>]) -> Self {
        let free = free_columns(cols, pivots);
        let restricted: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| free.iter().map(|&f| row[f].clone()).collect())
            .collect();
        let (numerators, denominator) = integerize_rows(&restricted);
        IntegerEchelon {
            cols,
            pivots: pivots.to_vec(),
            free,
            numerators,
            denominator,
        }
    }

    /// A basis of `{v : row_i · v = 0}`, one integer vector per free column.
    pub(crate) fn kernel_vectors(&self) -> Vec<Vec<BigInt>> {
        self.free
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                let mut v = vec![BigInt::zero(); self.cols];
                v[f] = self.denominator.clone();
                for (row, &p) in self.numerators.iter().zip(&self.pivots) {
                    v[p] = -&row[k];
                }
                v
            })
            .collect()
    }

    /// `D * v[f] − Σ_i v[p_i] * N_i[f]` at every free column, for an integer `v`.
    pub(crate) fn scaled_residual(&self, v: &[BigInt]) -> Vec<BigInt> {
        let used: Vec<(usize, &BigInt)> = self
            .pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| !v[p].is_zero())
            .map(|(i, &p)| (i, &v[p]))
            .collect();
        self.free
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                let mut acc = &self.denominator * &v[f];
                for &(i, c) in &used {
                    let n = &self.numerators[i][k];
                    if !n.is_zero() {
                        acc -= c * n;
                    }
                }
                acc
            })
            .collect()
    }

    /// Whether the reduction modulo `p` equals the reduced free entries `image`.
    fn matches_image(&self, image: &[Vec<u64>], p: u64) -> bool {
        let d = bigint_mod(&self.denominator, p);
        d != 0
            && self.numerators.iter().zip(image).all(|(row, im)| {
                row.iter().zip(im).all(|(n, &r)| bigint_mod(n, p) == mul_mod(r, d, p))
            })
    }

    /// Whether the integer vector lies in the span.
    fn contains_integer(&self, v: &[BigInt]) -> bool {
        self.scaled_residual(v).iter().all(Zero::is_zero)
    }

    /// Entries at the free columns of `v` reduced modulo the span.
    pub(crate) fn reduce_free(&self, v: &[Scalar]) -> Vec<Scalar> {
        let (nums, den) = integerize(v);
        let scale = &den * &self.denominator;
        self.scaled_residual(&nums)
            .into_iter()
            .map(|x| Scalar::Rational(BigRational::new(x, scale.clone())))
            .collect()
    }

    /// The rows as rationals over all columns.
    pub(crate) fn rational_rows(&self) -> Vec<Vec<Scalar>> {
        self.pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let mut row = vec![Scalar::Rational(BigRational::zero()); self.cols];
                row[p] = Scalar::Rational(BigRational::one());
                for (k, &f) in self.free.iter().enumerate() {
                    let n = &self.numerators[i][k];
                    if !n.is_zero() {
                        row[f] = Scalar::Rational(BigRational::new(n.clone(), self.denominator.clone()));
                    }
                }
                row
            })
            .collect()
    }
}

fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Reduced echelon form modulo `p`: pivots and, per pivot row, the entries
/// at the free columns.
fn rref_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][col], p);
        for x in m[r][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if y != 0 {
                        *x = sub_mod(*x, mul_mod(f, y, p), p);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = free_columns(cols, &pivots);
    let reduced = m[..r]
        .iter()
        .map(|row| free.iter().map(|&f| row[f]).collect())
        .collect();
    (pivots, reduced)
}

/// `a/b ≡ u (mod m)` with `|a|, b ≤ bound`, if one exists.
fn reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = core::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Symmetric representative of `x mod m`.
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Candidate rows from CRT images: one common denominator, found by
/// reconstructing the first entry that needs it and reused for the rest.
fn lift_candidate(residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let bound = (modulus / 2u32).sqrt();
    let mut den = BigInt::one();
    let mut entries: Vec<Vec<(BigInt, BigInt)>> = Vec::with_capacity(residues.len());
    for row in residues {
        let mut out = Vec::with_capacity(row.len());
        for u in row {
            let w = symmetric(&(u * &den), modulus);
            if w.abs() <= bound {
                out.push((w, den.clone()));
            } else {
                let (a, b) = reconstruct(u, modulus, &bound)?;
                den = den.lcm(&b);
                if den > bound {
                    return None;
                }
                out.push((a * (&den / &b), den.clone()));
            }
        }
        entries.push(out);
    }
    let numerators = entries
        .into_iter()
        .map(|row| row.into_iter().map(|(a, d)| a * (&den / d)).collect())
        .collect();
    Some((numerators, den))
}

/// Reduced echelon form of the span of `rows` (rationals).
pub(crate) fn rational_rref(cols: usize, rows: &[Vec<Scalar>]) -> IntegerEchelon {
    integer_rref(cols, rows.iter().map(|r| integerize(r).0).collect())
}

/// Reduced echelon form over `Q` of the span of integer rows.
pub(crate) fn integer_rref(cols: usize, mut integer_rows: Vec<Vec<BigInt>>) -> IntegerEchelon {
    integer_rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    let mut candidate: Option<IntegerEchelon> = None;
    if integer_rows.is_empty() {
        return IntegerEchelon {
            cols,
            pivots: Vec::new(),
            free: (0..cols).collect(),
            numerators: Vec::new(),
            denominator: BigInt::one(),
        };
    }
    for p in primes() {
        let images: Vec<Vec<u64>> = integer_rows
            .iter()
            .map(|r| r.iter().map(|x| bigint_mod(x, p)).collect())
            .collect();
        let (pivots, reduced) = rref_mod(&images, cols, p);
        let better = match &best {
            None => true,
            Some((b, _, _)) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        if better {
            let residues = reduced
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect();
            best = Some((pivots, residues, BigInt::from(p)));
        } else if best.as_ref().is_some_and(|(b, _, _)| *b == pivots) {
            if let Some(c) = candidate.take() {
                if c.matches_image(&reduced, p) && integer_rows.iter().all(|r| c.contains_integer(r)) {
                    return c;
                }
            }
            let (_, residues, modulus) = best.as_mut().expect("checked");
            combine(residues, modulus, &reduced, p);
        } else {
            // Rank or pivots drop modulo this prime: it is unlucky.
            continue;
        }
        let (pivots, residues, modulus) = best.as_ref().expect("set above");
        candidate = lift_candidate(residues, modulus).map(|(numerators, denominator)| IntegerEchelon {
            cols,
            free: free_columns(cols, pivots),
            pivots: pivots.clone(),
            numerators,
            denominator,
        });
    }
    unreachable!("prime supply exhausted")
}

/// Folds the images modulo `p` into the CRT residues modulo `modulus`.
fn combine(residues: &mut [Vec<BigInt>], modulus: &mut BigInt, images: &[Vec<u64>], p: u64) {
    let m_mod_p = bigint_mod(modulus, p);
    let inv = inv_mod(m_mod_p, p);
    for (row, image) in residues.iter_mut().zip(images) {
        for (x, &r) in row.iter_mut().zip(image) {
            let delta = mul_mod(sub_mod(r, bigint_mod(x, p), p), inv, p);
            if delta != 0 {
                *x += &*modulus * delta;
            }
        }
    }
    *modulus *= p;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldSpec, Matrix};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps: Vec<u64> = primes().take(200).collect();
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ps[0], 0x3fffffffffffffc7);
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m: BigInt = primes().take(2).map(BigInt::from).product();
        let bound = (&m / 2u32).sqrt();
        for (a, b) in [(3i64, 7i64), (-22, 5), (0, 1), (1_000_003, 999_999)] {
            let g = BigInt::from(b).extended_gcd(&m);
            let u = (BigInt::from(a) * g.x).mod_floor(&m);
            assert_eq!(reconstruct(&u, &m, &bound), Some((BigInt::from(a), BigInt::from(b))));
        }
    }

    #[test]
    fn agrees_with_gauss_jordan() {
        let rows: &[&[i64]] = &[&[2, 4, 1, 7], &[1, 2, 0, 3], &[3, 6, 1, 10], &[0, 0, 5, -1]];
        let m = Matrix::from_i64_rows(Q, rows).unwrap();
        let direct = m.rref();
        let e = rational_rref(4, &(0..4).map(|i| m.row(i).to_vec()).collect::<Vec<_>>());
        assert_eq!(e.pivots, direct.pivot_columns);
        let expected: Vec<Vec<Scalar>> = (0..direct.rank).map(|i| direct.reduced.row(i).to_vec()).collect();
        assert_eq!(e.rational_rows(), expected);
    }

    #[test]
    fn large_entries_need_several_primes() {
        let big = |k: i64| Q.from_bigint(&(BigInt::from(k).pow(40) + 1));
        let rows = vec![
            vec![big(3), big(5), big(7)],
            vec![big(11), big(2), Q.from_i64(1)],
        ];
        let e = rational_rref(3, &rows);
        let direct = Matrix::from_rows(Q, rows).unwrap().rref();
        let expected: Vec<Vec<Scalar>> = (0..direct.rank).map(|i| direct.reduced.row(i).to_vec()).collect();
        assert_eq!(e.rational_rows(), expected);
    }
}
