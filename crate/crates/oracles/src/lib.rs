//! Brute-force reference implementations for the test suites.
//!
//! Nothing here shares code with `lefschetz-core` beyond its polynomial
//! type: elimination, quotient construction and Jordan decomposition are
//! redone from scratch, slowly and plainly, over `Q`.

use std::collections::BTreeMap;

use lefschetz_core::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Vector = Vec<Q>;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Reduced row echelon form by plain Gauss-Jordan; returns the nonzero
/// rows and their pivot columns.
pub fn gauss_jordan(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    gauss_jordan(rows, cols).1.len()
}

/// Basis of `{v : M v = 0}` for `M` given by rows.
pub fn kernel(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (r, pivots) = gauss_jordan(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &[Vector], v: &[Q]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

fn transpose(m: &[Vector], cols: usize) -> Vec<Vector> {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Jordan block sizes of a nilpotent matrix, found by building the chains
/// `v, Nv, ..., N^{k−1}v` top down and checking that they form a basis.
///
/// Panics if the matrix is not nilpotent or the chains fail to be a basis.
pub fn jordan_chain_type(n: &[Vector]) -> Vec<usize> {
    let dim = n.len();
    if dim == 0 {
        return Vec::new();
    }
    // kernels[k] = ker N^k
    let mut kernels: Vec<Vec<Vector>> = vec![Vec::new()];
    let mut power = n.to_vec();
    loop {
        let k = kernel(&power, dim);
        let full = k.len() == dim;
        kernels.push(k);
        if full {
            break;
        }
        assert!(kernels.len() <= dim + 1, "matrix is not nilpotent");
        power = mat_mul(&power, n);
    }
    let height = kernels.len() - 1;
    let mut chains: Vec<(Vector, usize)> = Vec::new();
    for level in (1..=height).rev() {
        // vectors already accounted for at this level
        let mut span: Vec<Vector> = kernels[level - 1].clone();
        for (top, len) in &chains {
            let mut v = top.clone();
            for _ in 0..len - level {
                v = mat_vec(n, &v);
            }
            span.push(v);
        }
        let mut r = rank(&span, dim);
        for cand in &kernels[level] {
            span.push(cand.clone());
            let next = rank(&span, dim);
            if next > r {
                r = next;
                chains.push((cand.clone(), level));
            } else {
                span.pop();
            }
        }
    }
    let mut basis = Vec::new();
    for (top, len) in &chains {
        let mut v = top.clone();
        for _ in 0..*len {
            basis.push(v.clone());
            v = mat_vec(n, &v);
        }
        assert!(v.iter().all(Zero::is_zero), "chain does not terminate");
    }
    assert_eq!(rank(&basis, dim), dim, "chains do not form a basis");
    let mut sizes: Vec<usize> = chains.iter().map(|c| c.1).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Exponent vectors of degree `d` in `n` variables, in lexicographic order.
pub fn exponent_vectors(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn rational_terms(f: &Poly) -> BTreeMap<Vec<u32>, Q> {
    f.terms()
        .map(|(m, c)| {
            let c = c.as_rational().expect("oracles work over Q").clone();
            (m.exponents().to_vec(), c)
        })
        .collect()
}

fn product(a: &BTreeMap<Vec<u32>, Q>, b: &BTreeMap<Vec<u32>, Q>) -> BTreeMap<Vec<u32>, Q> {
    let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Degree {
    monomials: Vec<Vec<u32>>,
    reduced: Vec<Vector>,
    pivots: Vec<usize>,
    standard: Vec<usize>,
}

/// `Q[x_1..x_n]/I` from the full span of `{m · F}` in every degree, with
/// no reuse between degrees.
pub struct NaiveQuotient {
    nvars: usize,
    degrees: Vec<Degree>,
}

impl NaiveQuotient {
    /// `None` if the quotient is still nonzero in degree `cap`.
    pub fn build(nvars: usize, generators: &[Poly], cap: usize) -> Option<Self> {
        let gens: Vec<(usize, BTreeMap<Vec<u32>, Q>)> = generators
            .iter()
            .map(|g| (g.homogeneous_degree().expect("homogeneous"), rational_terms(g)))
            .collect();
        let mut degrees = Vec::new();
        for d in 0..=cap {
            let monomials = exponent_vectors(nvars, d);
            let index: BTreeMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for (e, g) in &gens {
                if *e > d {
                    continue;
                }
                for m in exponent_vectors(nvars, d - e) {
                    let mono = BTreeMap::from([(m, Q::one())]);
                    let mut row = vec![Q::zero(); monomials.len()];
                    for (k, c) in product(&mono, g) {
                        row[index[&k]] = c;
                    }
                    rows.push(row);
                }
            }
            let (reduced, pivots) = gauss_jordan(&rows, monomials.len());
            let standard: Vec<usize> = (0..monomials.len()).filter(|c| !pivots.contains(c)).collect();
            if standard.is_empty() {
                return Some(NaiveQuotient { nvars, degrees });
            }
            degrees.push(Degree {
                monomials,
                reduced,
                pivots,
                standard,
            });
        }
        None
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.standard.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.degrees.iter().map(|d| d.standard.len()).sum()
    }

    /// Coordinates of the homogeneous `f` over the standard monomials of its degree.
    fn normal_form(&self, d: usize, f: &BTreeMap<Vec<u32>, Q>) -> Vector {
        let deg = &self.degrees[d];
        let mut v: Vector = deg
            .monomials
            .iter()
            .map(|m| f.get(m).cloned().unwrap_or_else(Q::zero))
            .collect();
        for (row, &p) in deg.reduced.iter().zip(&deg.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        deg.standard.iter().map(|&s| v[s].clone()).collect()
    }

    /// Matrix of `×y` on all of `A`, columns indexed by the standard
    /// monomials of every degree in turn.
    pub fn multiplication_matrix(&self, y: &Poly) -> Vec<Vector> {
        assert_eq!(y.nvars(), self.nvars);
        let e = y.homogeneous_degree().expect("homogeneous");
        let yt = rational_terms(y);
        let offsets: Vec<usize> = self
            .degrees
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d.standard.len();
                Some(o)
            })
            .collect();
        let dim = self.dim();
        let mut columns = Vec::with_capacity(dim);
        for (d, deg) in self.degrees.iter().enumerate() {
            for &s in &deg.standard {
                let mut col = vec![Q::zero(); dim];
                if d + e < self.degrees.len() {
                    let mono = BTreeMap::from([(deg.monomials[s].clone(), Q::one())]);
                    let nf = self.normal_form(d + e, &product(&mono, &yt));
                    for (k, c) in nf.into_iter().enumerate() {
                        col[offsets[d + e] + k] = c;
                    }
                }
                columns.push(col);
            }
        }
        transpose(&columns, dim)
    }
}

/// Hilbert function of `K[x]/(x_1^{a_1}, ..., x_n^{a_n})` by listing the
/// monomials with `e_i < a_i`.
pub fn monomial_ci_hilbert(exponents: &[usize]) -> Vec<usize> {
    let top: usize = exponents.iter().map(|a| a - 1).sum();
    let mut h = vec![0; top + 1];
    let mut e = vec![0usize; exponents.len()];
    loop {
        h[e.iter().sum::<usize>()] += 1;
        let mut i = 0;
        loop {
            if i == e.len() {
                return h;
            }
            e[i] += 1;
            if e[i] < exponents[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Conjugate partition: column lengths of the Young diagram.
pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let width = parts.iter().copied().max().unwrap_or(0);
    (1..=width).map(|c| parts.iter().filter(|&&p| p >= c).count()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lefschetz_core::FieldSpec;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, FieldSpec::Rationals, i)
    }

    #[test]
    fn jordan_of_a_single_block() {
        // shift on 3 coordinates
        let n = vec![
            vec![q(0), q(0), q(0)],
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
        ];
        assert_eq!(jordan_chain_type(&n), vec![3]);
        assert_eq!(jordan_chain_type(&vec![vec![q(0); 2]; 2]), vec![1, 1]);
    }

    #[test]
    fn cube_of_squares() {
        let gens: Vec<Poly> = (0..3).map(|i| var(3, i).pow(2)).collect();
        let a = NaiveQuotient::build(3, &gens, 4).unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 3, 3, 1]);
        let y = var(3, 0).add(&var(3, 1)).unwrap().add(&var(3, 2)).unwrap();
        assert_eq!(jordan_chain_type(&a.multiplication_matrix(&y)), vec![4, 2, 2]);
        assert_eq!(jordan_chain_type(&a.multiplication_matrix(&var(3, 0))), vec![2, 2, 2, 2]);
    }

    #[test]
    fn non_artinian_is_none() {
        let x = var(2, 0);
        let gens = vec![x.pow(2), x.multiply(&var(2, 1)).unwrap()];
        assert!(NaiveQuotient::build(2, &gens, 6).is_none());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_ci_hilbert(&[2, 3]), vec![1, 2, 2, 1]);
        assert_eq!(monomial_ci_hilbert(&[1, 4]), vec![1, 1, 1, 1]);
        assert_eq!(conjugate(&[4, 2, 2]), vec![3, 3, 1, 1]);
    }
}
