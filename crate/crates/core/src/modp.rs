//! Dense linear algebra modulo a word-size prime.
//!
//! Over `Q` every quantity here is the image of an exact rational one, so a
//! rank computed modulo `p` is a lower bound for the rank over `Q`; when it
//! already equals the smaller dimension it is the exact answer. Over `F_p`
//! the modulus is the characteristic and every rank is exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{inv_mod, mul_mod, sub_mod, FieldSpec, Scalar, CERTIFY_PRIME};

/// Modulus used for the cheap shadow of a computation over `field`.
pub fn shadow_modulus(field: FieldSpec) -> u64 {
    match field {
        FieldSpec::Rationals => CERTIFY_PRIME,
        FieldSpec::PrimeField(p) => p,
    }
}

/// Image of `s` in `F_p`, or `None` when a denominator vanishes there.
pub fn residue(s: &Scalar, p: u64) -> Option<u64> {
    s.residue_mod(p)
}

pub(crate) fn residues(v: &[Scalar], p: u64) -> Option<Vec<u64>> {
    v.iter().map(|x| residue(x, p)).collect()
}

/// `dst -= f * src`
pub(crate) fn sub_scaled_mod(dst: &mut [u64], f: u64, src: &[u64], p: u64) {
    if f == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = sub_mod(*d, mul_mod(f, s, p), p);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Self {
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_columns(modulus: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = ModMatrix::zero(modulus, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        let p = self.modulus;
        let mut out = ModMatrix::zero(p, self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    // dst += a * row_k, written as dst -= (p - a) * row_k
                    sub_scaled_mod(dst, p - a, &rhs.data[k * rhs.cols..(k + 1) * rhs.cols], p);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let p = self.modulus;
        let mut m = self.data.clone();
        let cols = self.cols;
        let mut rank = 0;
        for col in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&i| m[i * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in col..cols {
                    m.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = inv_mod(m[rank * cols + col], p);
            let (top, bottom) = m.split_at_mut((rank + 1) * cols);
            let pivot_row = &top[rank * cols..];
            for row in bottom.chunks_mut(cols) {
                if row[col] != 0 {
                    let f = mul_mod(row[col], inv, p);
                    sub_scaled_mod(&mut row[col..], f, &pivot_row[col..], p);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_product() {
        let p = CERTIFY_PRIME;
        let a = ModMatrix::from_columns(p, 2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
        let id = ModMatrix::from_columns(p, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(a.mul(&id), a);
        let b = ModMatrix::from_columns(p, 2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(b.mul(&b), id);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn residues_of_rationals() {
        let q = FieldSpec::Rationals;
        let half = &q.one() * &q.from_i64(2).inv().unwrap();
        assert_eq!(residue(&half, 7), Some(4));
        assert_eq!(residue(&half, 2), None);
        assert_eq!(residue(&q.from_i64(-1), 7), Some(6));
    }
}
