//! Exact scalars over `Q` or a prime field, dense matrices and the row
//! reduction kernel everything else is built on.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multimod::{integer_rref, integerize, rational_rref, IntegerEchelon};

/// Smallest modulus accepted by [`FieldSpec::prime`].
pub const DEFAULT_PRIME_FLOOR: u64 = 1 << 20;

/// Below this many entries, plain elimination over `Q` beats modular images.
const MULTIMODULAR_THRESHOLD: usize = 36;

/// Mersenne prime used to certify full rank over `Q` cheaply.
pub const CERTIFY_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// A prime field `F_p` with `p > 2^20`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::prime_with_floor(p, DEFAULT_PRIME_FLOOR)
    }

    pub fn prime_with_floor(p: u64, floor: u64) -> Result<Self> {
        if p > floor && is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: bigint_mod(v, p),
                modulus: p,
            },
        }
    }

    /// `num / den`, or `None` when the denominator vanishes in this field.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => Some(Scalar::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let den = bigint_mod(q.denom(), p);
                if den == 0 {
                    return None;
                }
                let num = bigint_mod(q.numer(), p);
                Some(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{}", p),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Image in `F_p`; `None` if a denominator is divisible by `p`.
    pub(crate) fn residue_mod(&self, p: u64) -> Option<u64> {
        match self {
            Scalar::Rational(q) => {
                let den = bigint_mod(q.denom(), p);
                (den != 0).then(|| mul_mod(bigint_mod(q.numer(), p), inv_mod(den, p), p))
            }
            Scalar::Residue { value, modulus } => (*modulus == p).then_some(*value),
        }
    }

    /// `self -= a * b`
    pub(crate) fn sub_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                *s -= x * y;
            }
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, modulus: mx },
                Scalar::Residue { value: y, modulus: my },
            ) if modulus == mx && modulus == my => {
                let prod = mul_mod(*x, *y, *modulus);
                *value = sub_mod(*value, prod, *modulus);
            }
            _ => mixed_field_panic(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", q),
            Scalar::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

#[cold]
fn mixed_field_panic() -> ! {
    panic!("arithmetic on scalars from different fields")
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (
                        Scalar::Residue { value: a, modulus: p },
                        Scalar::Residue { value: b, modulus: q },
                    ) if p == q => Scalar::Residue {
                        value: $res(*a, *b, *p),
                        modulus: *p,
                    },
                    _ => mixed_field_panic(),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, |a: &BigRational, b: &BigRational| a + b, add_mod);
binary_op!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, sub_mod);
binary_op!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: sub_mod(0, *value, *modulus),
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= p as u128 {
        (s - p as u128) as u64
    } else {
        s as u64
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    let x = a as u128 * b as u128;
    if p == CERTIFY_PRIME {
        // 2^61 ≡ 1, so fold the high bits onto the low ones.
        let folded = (x as u64 & CERTIFY_PRIME) + (x >> 61) as u64;
        let r = (folded & CERTIFY_PRIME) + (folded >> 61);
        return if r >= CERTIFY_PRIME { r - CERTIFY_PRIME } else { r };
    }
    (x % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v
        .magnitude()
        .iter_u64_digits()
        .rev()
        .fold(0u64, |r, d| ((((r as u128) << 64) | d as u128) % p as u128) as u64);
    if v.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn integer_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `dst -= factor * src`, skipping zero entries of `src`.
pub(crate) fn sub_scaled(dst: &mut [Scalar], factor: &Scalar, src: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            d.sub_product(factor, s);
        }
    }
}

fn scale_in_place(row: &mut [Scalar], factor: &Scalar) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * factor;
        }
    }
}

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub reduced: Matrix,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                if x.field() != field {
                    return Err(Error::MixedField);
                }
                data.push(x);
            }
        }
        Ok(Matrix { rows, cols, field, data })
    }

    /// Builds a matrix from rows, checking shape and that every entry lives in `field`.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    ncols
                )));
            }
            if row.iter().any(|x| x.field() != field) {
                return Err(Error::MixedField);
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            field,
            data,
        })
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zero(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
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

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::MixedField);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field == FieldSpec::Rationals {
            // Integer dot products over common denominators: one gcd per entry.
            let rows: Vec<_> = (0..self.rows).map(|i| integerize(self.row(i))).collect();
            let cols: Vec<_> = (0..rhs.cols).map(|j| integerize(&rhs.column(j))).collect();
            let data = rows
                .iter()
                .flat_map(|(a, da)| {
                    cols.iter().map(move |(b, db)| {
                        Scalar::Rational(BigRational::new(integer_dot(a, b), da * db))
                    })
                })
                .collect();
            return Ok(Matrix {
                rows: self.rows,
                cols: rhs.cols,
                field: self.field,
                data,
            });
        }
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let neg = -a;
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                sub_scaled(dst, &neg, rhs.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        if self.field == FieldSpec::Rationals {
            let (b, db) = integerize(v);
            return Ok((0..self.rows)
                .map(|i| {
                    let (a, da) = integerize(self.row(i));
                    Scalar::Rational(BigRational::new(integer_dot(&a, &b), da * &db))
                })
                .collect());
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.sub_product(&-a, b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form. Over `Q`, larger matrices go through
    /// modular images and an exact check; otherwise Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        if self.field == FieldSpec::Rationals && self.rows * self.cols > MULTIMODULAR_THRESHOLD {
            let rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
            let e = rational_rref(self.cols, &rows);
            let rank = e.pivots.len();
            let mut data: Vec<Scalar> = e.rational_rows().into_iter().flatten().collect();
            data.resize(self.rows * self.cols, self.field.zero());
            return Rref {
                rank,
                pivot_columns: e.pivots,
                reduced: Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    field: self.field,
                    data,
                },
            };
        }
        self.rref_gauss_jordan()
    }

    fn rref_gauss_jordan(&self) -> Rref {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][col].inv().expect("pivot is nonzero");
            scale_in_place(&mut m[r][col..], &inv);
            let (before, rest) = m.split_at_mut(r);
            let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
            for other in before.iter_mut().chain(after.iter_mut()) {
                if !other[col].is_zero() {
                    let f = other[col].clone();
                    sub_scaled(&mut other[col..], &f, &pivot_row[col..]);
                }
            }
            pivots.push(col);
            r += 1;
        }
        let reduced = Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: m.into_iter().flatten().collect(),
        };
        Rref {
            rank: r,
            pivot_columns: pivots,
            reduced,
        }
    }

    /// Exact rank.
    ///
    /// Over `Q` the matrix is first reduced modulo a 61-bit prime: the rank
    /// there never exceeds the rank over `Q`, so a full-rank result is final.
    /// Otherwise it is read off the reduced echelon form.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::PrimeField(p) => self.rank_mod(p).expect("entries live in F_p"),
            FieldSpec::Rationals => {
                let full = self.rows.min(self.cols);
                match self.rank_mod(CERTIFY_PRIME) {
                    Some(r) if r == full => r,
                    _ => self.rref().rank,
                }
            }
        }
    }

    fn rank_mod(&self, p: u64) -> Option<usize> {
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row: Option<Vec<u64>> = self.row(i).iter().map(|x| x.residue_mod(p)).collect();
            m.push(row?);
        }
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = inv_mod(m[rank][col], p);
            for i in rank + 1..self.rows {
                if m[i][col] == 0 {
                    continue;
                }
                let f = mul_mod(m[i][col], inv, p);
                for j in col..self.cols {
                    let prod = mul_mod(f, m[rank][j], p);
                    m[i][j] = sub_mod(m[i][j], prod, p);
                }
            }
            rank += 1;
        }
        Some(rank)
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rref.pivot_columns {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &pc) in rref.pivot_columns.iter().enumerate() {
                    v[pc] = -rref.reduced.get(r, free);
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det = &det * &m[col][col];
            let inv = m[col][col].inv().expect("pivot is nonzero");
            let (top, bottom) = m.split_at_mut(col + 1);
            for row in bottom.iter_mut() {
                if !row[col].is_zero() {
                    let f = &row[col] * &inv;
                    sub_scaled(&mut row[col..], &f, &top[col][col..]);
                }
            }
        }
        Ok(det)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
        }
        write!(f, "]")
    }
}

/// A subspace of `K^dim` stored as the rows of its reduced echelon form.
///
/// The reduced form is unique, so two `RowSpace`s span the same space
/// exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    field: FieldSpec,
    ambient_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        RowSpace {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let id = Matrix::identity(field, ambient_dim);
        RowSpace {
            field,
            ambient_dim,
            rows: (0..ambient_dim).map(|i| id.row(i).to_vec()).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors<I>(field: FieldSpec, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        if field == FieldSpec::Rationals {
            let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
            if rows.len() * ambient_dim > MULTIMODULAR_THRESHOLD {
                let e = rational_rref(ambient_dim, &rows);
                return RowSpace {
                    field,
                    ambient_dim,
                    rows: e.rational_rows(),
                    pivots: e.pivots,
                };
            }
            return RowSpace::from_vectors_incremental(field, ambient_dim, rows);
        }
        RowSpace::from_vectors_incremental(field, ambient_dim, vectors)
    }

    fn from_vectors_incremental<I>(field: FieldSpec, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = RowSpace::zero(field, ambient_dim);
        for v in vectors {
            if s.dim() == ambient_dim {
                break;
            }
            s.insert(v);
        }
        s
    }

    /// Kernel over `Q` of the matrix with the given integer rows.
    pub(crate) fn integer_kernel(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let kernel = integer_rref(cols, integer_rref(cols, rows).kernel_vectors());
        RowSpace {
            field: FieldSpec::Rationals,
            ambient_dim: cols,
            rows: kernel.rational_rows(),
            pivots: kernel.pivots,
        }
    }

    /// The echelon rows over one integer denominator (`Q` only).
    pub(crate) fn integer_echelon(&self) -> IntegerEchelon {
        IntegerEchelon::from_rational_rows(self.ambient_dim, &self.pivots, &self.rows)
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        RowSpace::from_vectors(m.field(), m.rows(), (0..m.cols()).map(|j| m.column(j)))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Projection of `v` that kills this subspace: zero at every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                sub_scaled(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        // The reduction vanishes at every pivot; only free columns need checking.
        let used = self.pivot_coefficients(v);
        self.free_columns()
            .all(|f| Self::residual_at(v, &used, f).is_zero())
    }

    /// The entries of [`RowSpace::reduce`] at the non-pivot columns, in order.
    pub fn reduce_free(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let used = self.pivot_coefficients(v);
        self.free_columns()
            .map(|f| Self::residual_at(v, &used, f))
            .collect()
    }

    fn pivot_coefficients<'a>(&'a self, v: &'a [Scalar]) -> Vec<(&'a Scalar, &'a [Scalar])> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(_, &p)| !v[p].is_zero())
            .map(|(row, &p)| (&v[p], row.as_slice()))
            .collect()
    }

    fn residual_at(v: &[Scalar], used: &[(&Scalar, &[Scalar])], f: usize) -> Scalar {
        let mut acc = v[f].clone();
        for (c, row) in used {
            if !row[f].is_zero() {
                acc.sub_product(c, &row[f]);
            }
        }
        acc
    }

    pub fn free_columns(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next_pivot = self.pivots.iter().peekable();
        (0..self.ambient_dim).filter(move |&c| {
            if next_pivot.peek() == Some(&&c) {
                next_pivot.next();
                false
            } else {
                true
            }
        })
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        scale_in_place(&mut r, &inv);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                sub_scaled(row, &f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        if self.field == FieldSpec::Rationals && other.dim() > 1 {
            let rows = self.rows.iter().chain(&other.rows).cloned();
            return RowSpace::from_vectors(self.field, self.ambient_dim, rows);
        }
        let mut s = self.clone();
        for r in &other.rows {
            if s.dim() == s.ambient_dim {
                break;
            }
            s.insert(r.clone());
        }
        s
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.rows.clone())
            .unwrap_or_else(|_| Matrix::zero(self.field, 0, self.ambient_dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn span_eq(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize) -> bool {
        RowSpace::from_vectors(Q, dim, a.iter().cloned())
            == RowSpace::from_vectors(Q, dim, b.iter().cloned())
    }

    #[test]
    fn rref_identity() {
        let r = Matrix::identity(Q, 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
        assert_eq!(r.reduced, Matrix::identity(Q, 3));
    }

    #[test]
    fn rref_zero() {
        let r = Matrix::zero(Q, 2, 4).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.reduced, Matrix::from_i64_rows(Q, &[&[1, 2], &[0, 0]]).unwrap());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn mixed_field_rows_rejected() {
        let fp = FieldSpec::prime(2_147_483_647).unwrap();
        let rows = vec![vec![Q.one(), fp.one()]];
        assert_eq!(Matrix::from_rows(Q, rows), Err(Error::MixedField));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Q, 2).kernel_basis().is_empty());

        let k = Matrix::zero(Q, 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        let id = Matrix::identity(Q, 3);
        let std: Vec<_> = (0..3).map(|i| id.row(i).to_vec()).collect();
        assert!(span_eq(&k, &std, 3));

        let m = Matrix::from_i64_rows(Q, &[&[1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert!(span_eq(&k, &[vec![Q.from_i64(1), Q.from_i64(-1)]], 2));
    }

    #[test]
    fn prime_field_construction() {
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert_eq!(FieldSpec::prime(1_000_003), Err(Error::InvalidPrime(1_000_003)));
        assert!(FieldSpec::prime_with_floor(1_000_003, 1000).is_ok());
        assert_eq!(FieldSpec::prime(2_147_483_649), Err(Error::InvalidPrime(2_147_483_649)));
        assert_eq!(FieldSpec::prime(101), Err(Error::InvalidPrime(101)));
        assert!(FieldSpec::prime_with_floor(101, 100).is_ok());
        assert!(is_prime_u64(CERTIFY_PRIME));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn residue_arithmetic() {
        let fp = FieldSpec::prime(2_147_483_647).unwrap();
        let a = fp.from_i64(-1);
        assert_eq!(a, Scalar::Residue { value: 2_147_483_646, modulus: 2_147_483_647 });
        assert!((&a * &a).is_one());
        let x = fp.from_i64(12345);
        assert!((&x * &x.inv().unwrap()).is_one());
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!((&fp.from_rational(&half).unwrap() * &fp.from_i64(2)).is_one());
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Q.from_i64(-2));
        let m = Matrix::from_i64_rows(Q, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Q.from_i64(-1));
        assert!(matches!(
            Matrix::zero(Q, 2, 3).determinant(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = Matrix::from_i64_rows(Q, &[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().rank, 2);
    }

    #[test]
    fn row_space_insert_keeps_reduced_form() {
        let mut s = RowSpace::zero(Q, 3);
        assert!(s.insert(vec![Q.from_i64(0), Q.from_i64(2), Q.from_i64(4)]));
        assert!(s.insert(vec![Q.from_i64(1), Q.from_i64(1), Q.from_i64(1)]));
        assert!(!s.insert(vec![Q.from_i64(1), Q.from_i64(3), Q.from_i64(5)]));
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.to_matrix(), Matrix::from_i64_rows(Q, &[&[1, 0, -1], &[0, 1, 2]]).unwrap());
    }

    #[test]
    fn integer_kernel_spans_the_kernel() {
        let rows: [&[i64]; 3] = [&[3, -1, 4, 1, 0, 5], &[6, -2, 8, 2, 0, 10], &[0, 7, 1, 1, 9, -4]];
        let m = Matrix::from_i64_rows(Q, &rows).unwrap();
        let ints = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let k = RowSpace::integer_kernel(6, ints);
        assert_eq!(k.dim(), 4);
        assert!(span_eq(k.rows(), &m.kernel_basis(), 6));
    }
}
