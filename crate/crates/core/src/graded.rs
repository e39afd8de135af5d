//! Standard graded Artinian quotients `A = K[x_1..x_n]/I`, realized degree by
//! degree with exact linear algebra, plus graded subspaces (ideals of `A`)
//! and graded subquotient modules.
//!
//! Degree `d+1` is computed from degree `d` alone. Standard monomials form an
//! order ideal, so every standard monomial of degree `d+1` lies in
//! `P = { x_j * s : s standard of degree d }`. Each monomial `mu = x_j * m`
//! is lifted to `K^P` through the normal form of `m`; different lifts of the
//! same monomial differ by elements of `x * I_d`, and these differences
//! together with the degree-`d+1` generators span `I_{d+1} ∩ K^P`. The
//! eliminations therefore only ever have `|P| <= n * h_d` columns.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modp::{residue, residues, shadow_modulus, sub_scaled_mod, ModMatrix};
use crate::multimod::{integer_rref, integerize, integerize_rows, rational_rref};
use crate::poly::{monomial_count, Monomial, MonomialBasis, Poly};
use crate::scalar::{add_mod, mul_mod, sub_scaled, FieldSpec, Matrix, RowSpace, Scalar};

/// A finite graded vector space with an action of the polynomial ring:
/// either an algebra `A` or a graded subquotient module of one.
pub trait GradedSpace {
    fn field(&self) -> FieldSpec;

    fn nvars(&self) -> usize;

    /// Dimensions in degrees `0..=top`, where `top` bounds every nonzero degree.
    fn hilbert_function(&self) -> Vec<usize>;

    fn dim(&self, d: usize) -> usize {
        self.hilbert_function().get(d).copied().unwrap_or(0)
    }

    /// Matrix of multiplication by the homogeneous `f`, from degree `d` to
    /// degree `d + deg f`, in this space's coordinates.
    fn action_matrix(&self, f: &Poly, d: usize) -> Result<Matrix>;

    /// Exact rank of [`GradedSpace::action_matrix`].
    fn action_rank(&self, f: &Poly, d: usize) -> Result<usize> {
        Ok(self.action_matrix(f, d)?.rank())
    }

    /// [`GradedSpace::action_matrix`] reduced modulo
    /// [`shadow_modulus`]`(self.field())`, when every entry has an image there.
    fn action_matrix_mod(&self, _f: &Poly, _d: usize) -> Option<ModMatrix> {
        None
    }

    fn as_algebra(&self) -> Option<&ArtinianAlgebra> {
        None
    }

    /// First and last degree with nonzero dimension; `None` for the zero space.
    fn effective_range(&self) -> Option<(usize, usize)> {
        let h = self.hilbert_function();
        let a = h.iter().position(|&x| x > 0)?;
        let b = h.iter().rposition(|&x| x > 0)?;
        Some((a, b))
    }

    fn total_dim(&self) -> usize {
        self.hilbert_function().iter().sum()
    }
}

#[derive(Clone, Debug)]
struct DegreePiece {
    monomials: MonomialBasis,
    /// Indices into `monomials` of the standard monomials, in grlex-descending order.
    standard: Vec<usize>,
    /// Standard-monomial coordinates of every monomial of this degree.
    normal_forms: Vec<Vec<Scalar>>,
    /// `normal_forms` modulo the shadow prime, if every entry has an image there.
    shadow: Option<Vec<Vec<u64>>>,
    /// Over `Q`: `normal_forms` as integer numerators over one denominator.
    integral: Option<(Vec<Vec<BigInt>>, BigInt)>,
}

impl DegreePiece {
    fn hilbert_value(&self) -> usize {
        self.standard.len()
    }

    fn is_standard(&self, monomial: usize) -> bool {
        self.standard.binary_search(&monomial).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct ArtinianAlgebra {
    nvars: usize,
    field: FieldSpec,
    generators: Vec<Poly>,
    pieces: Vec<DegreePiece>,
}

/// Image of a polynomial in `A`: one coordinate vector per degree `0..=c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    pieces: Vec<Vec<Scalar>>,
}

impl GradedVector {
    pub fn piece(&self, d: usize) -> &[Scalar] {
        self.pieces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn pieces(&self) -> &[Vec<Scalar>] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().flatten().all(Scalar::is_zero)
    }
}

/// Default degree cap `1 + Σ (deg F_i − 1)`.
pub fn default_degree_cap(generator_degrees: &[usize]) -> usize {
    1 + generator_degrees.iter().map(|d| d.saturating_sub(1)).sum::<usize>()
}

impl ArtinianAlgebra {
    /// Builds `K[x_1..x_n]/(generators)`.
    ///
    /// Stops at the first degree with `h_d = 0`; fails with `NotArtinian`
    /// if the quotient is still nonzero in degree `degree_cap`.
    pub fn build(
        nvars: usize,
        field: FieldSpec,
        generators: Vec<Poly>,
        degree_cap: Option<usize>,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidArgument("need at least one variable".into()));
        }
        let mut by_degree: BTreeMap<usize, Vec<&Poly>> = BTreeMap::new();
        let mut degrees = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
            if g.field() != field {
                return Err(Error::MixedField);
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            let d = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if d == 0 {
                return Err(Error::ZeroGenerator);
            }
            degrees.push(d);
            by_degree.entry(d).or_default().push(g);
        }
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let cap = degree_cap.unwrap_or_else(|| default_degree_cap(&degrees));
        if cap < max_degree {
            return Err(Error::DegreeCapTooSmall { cap, max_degree });
        }

        let mut pieces = vec![DegreePiece {
            monomials: MonomialBasis::new(nvars, 0),
            standard: vec![0],
            normal_forms: vec![vec![field.one()]],
            shadow: Some(vec![vec![1]]),
            integral: (field == FieldSpec::Rationals).then(|| (vec![vec![BigInt::one()]], BigInt::one())),
        }];
        for d in 1..=cap {
            let gens = by_degree.get(&d).map_or(&[][..], Vec::as_slice);
            let below = d.checked_sub(2).map(|b| &pieces[b]);
            let next = next_piece(nvars, field, below, &pieces[d - 1], d, gens);
            if next.hilbert_value() == 0 {
                return Ok(ArtinianAlgebra {
                    nvars,
                    field,
                    generators,
                    pieces,
                });
            }
            pieces.push(next);
        }
        Err(Error::NotArtinian { degree_cap: cap })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Top nonzero degree `c`.
    pub fn socle_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(DegreePiece::hilbert_value).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, DegreePiece::hilbert_value)
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(DegreePiece::hilbert_value).sum()
    }

    pub fn standard_monomials(&self, d: usize) -> Vec<Monomial> {
        self.pieces.get(d).map_or_else(Vec::new, |p| {
            p.standard.iter().map(|&i| p.monomials.get(i).clone()).collect()
        })
    }

    /// Dimension of the degree-`d` piece of the ideal.
    pub fn ideal_rank(&self, d: usize) -> usize {
        monomial_count(self.nvars, d) - self.dim(d)
    }

    /// Reduced echelon form of `I_d` in the coordinates of
    /// `monomials_of_degree(n, d)`: one row `m − NF(m)` per non-standard `m`.
    pub fn ideal_span_echelon(&self, d: usize) -> Matrix {
        let monomials = MonomialBasis::new(self.nvars, d);
        let Some(piece) = self.pieces.get(d) else {
            return Matrix::identity(self.field, monomials.len());
        };
        let mut rows = Vec::new();
        for (i, nf) in piece.normal_forms.iter().enumerate() {
            if piece.standard.binary_search(&i).is_ok() {
                continue;
            }
            let mut row = vec![self.field.zero(); monomials.len()];
            row[i] = self.field.one();
            for (&s, c) in piece.standard.iter().zip(nf) {
                row[s] = -c;
            }
            rows.push(row);
        }
        Matrix::from_rows(self.field, rows).unwrap_or_else(|_| Matrix::zero(self.field, 0, monomials.len()))
    }

    fn monomial_normal_form(&self, m: &Monomial) -> Option<&[Scalar]> {
        let piece = self.pieces.get(m.degree())?;
        let i = piece.monomials.index_of(m).expect("monomial of this degree");
        Some(&piece.normal_forms[i])
    }

    /// Image of `f` in `A`.
    pub fn normal_form(&self, f: &Poly) -> Result<GradedVector> {
        self.check_poly(f)?;
        let mut pieces: Vec<Vec<Scalar>> = self
            .pieces
            .iter()
            .map(|p| vec![self.field.zero(); p.hilbert_value()])
            .collect();
        for (m, c) in f.terms() {
            if let Some(nf) = self.monomial_normal_form(m) {
                let neg = -c;
                sub_scaled(&mut pieces[m.degree()], &neg, nf);
            }
        }
        Ok(GradedVector { pieces })
    }

    /// The polynomial `Σ v_k s_k` over the standard monomials of degree `d`.
    pub fn lift(&self, d: usize, coords: &[Scalar]) -> Poly {
        let standard = self.standard_monomials(d);
        debug_assert_eq!(standard.len(), coords.len());
        Poly::from_terms(self.nvars, self.field, standard.into_iter().zip(coords.iter().cloned()))
            .expect("coordinates live in this field")
    }

    fn check_poly(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: f.nvars(),
            });
        }
        if f.field() != self.field {
            return Err(Error::MixedField);
        }
        Ok(())
    }

    /// Degree of a homogeneous, nonzero `f` belonging to this ring.
    pub(crate) fn homogeneous_degree_of(&self, f: &Poly) -> Result<usize> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        f.homogeneous_degree().ok_or(Error::NotHomogeneous)
    }

    /// Matrix of `×f : A_i → A_{i+k}`; column `j` is the normal form of `f`
    /// times the `j`-th standard monomial of degree `i`.
    pub fn multiplication_matrix(&self, f: &Poly, i: usize) -> Result<Matrix> {
        let k = self.homogeneous_degree_of(f)?;
        let (src, dst) = (self.dim(i), self.dim(i + k));
        let mut m = Matrix::zero(self.field, dst, src);
        if src == 0 || dst == 0 {
            return Ok(m);
        }
        let target = &self.pieces[i + k];
        if let Some((rows, scale)) = self.multiplication_rows_integer(f, i)? {
            for (r, row) in rows.into_iter().enumerate() {
                for (col, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        m.set(r, col, Scalar::Rational(BigRational::new(v, scale.clone())));
                    }
                }
            }
            return Ok(m);
        }
        for (col, s) in self.standard_monomials(i).iter().enumerate() {
            let mut acc = vec![self.field.zero(); dst];
            for (mu, c) in f.terms() {
                let prod = mu.mul(s);
                let idx = target.monomials.index_of(&prod).expect("degree matches");
                sub_scaled(&mut acc, &-c, &target.normal_forms[idx]);
            }
            for (row, v) in acc.into_iter().enumerate() {
                m.set(row, col, v);
            }
        }
        Ok(m)
    }

    /// Over `Q`: the rows of [`ArtinianAlgebra::multiplication_matrix`] as
    /// integers over a common denominator, accumulated without normalizing.
    pub(crate) fn multiplication_rows_integer(&self, f: &Poly, i: usize) -> Result<Option<(Vec<Vec<BigInt>>, BigInt)>> {
        let k = self.homogeneous_degree_of(f)?;
        let Some(target) = self.pieces.get(i + k) else {
            return Ok(None);
        };
        let Some((table, den)) = &target.integral else {
            return Ok(None);
        };
        let (src, dst) = (self.dim(i), self.dim(i + k));
        let (coeffs, f_den) = integerize(&f.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>());
        let mut rows = vec![vec![BigInt::zero(); src]; dst];
        for (col, s) in self.standard_monomials(i).iter().enumerate() {
            for ((mu, _), c) in f.terms().zip(&coeffs) {
                let idx = target.monomials.index_of(&mu.mul(s)).expect("degree matches");
                for (row, n) in rows.iter_mut().zip(&table[idx]) {
                    if !n.is_zero() {
                        row[col] += c * n;
                    }
                }
            }
        }
        Ok(Some((rows, den * f_den)))
    }

    /// [`ArtinianAlgebra::multiplication_matrix`] modulo the shadow prime.
    pub fn multiplication_matrix_mod(&self, f: &Poly, i: usize) -> Option<ModMatrix> {
        let k = self.homogeneous_degree_of(f).ok()?;
        let p = shadow_modulus(self.field);
        let (src, dst) = (self.dim(i), self.dim(i + k));
        if src == 0 || dst == 0 {
            return Some(ModMatrix::zero(p, dst, src));
        }
        let terms: Vec<(&Monomial, u64)> = f
            .terms()
            .map(|(m, c)| Some((m, residue(c, p)?)))
            .collect::<Option<_>>()?;
        let target = &self.pieces[i + k];
        let shadow = target.shadow.as_ref()?;
        let columns: Vec<Vec<u64>> = self
            .standard_monomials(i)
            .iter()
            .map(|s| {
                let mut acc = vec![0u64; dst];
                for &(mu, c) in &terms {
                    let idx = target.monomials.index_of(&mu.mul(s)).expect("degree matches");
                    sub_scaled_mod(&mut acc, p - c, &shadow[idx], p);
                }
                acc
            })
            .collect();
        Some(ModMatrix::from_columns(p, dst, &columns))
    }

    /// `A/J` for a graded ideal `J` of `A`, as a new algebra with `J`'s
    /// basis elements appended to the generators.
    pub fn quotient_by(&self, ideal: &GradedSubspace) -> Result<ArtinianAlgebra> {
        let mut gens = self.generators.clone();
        for (d, piece) in ideal.pieces.iter().enumerate() {
            if d == 0 && piece.dim() > 0 {
                return Err(Error::InvalidArgument("ideal contains a unit".into()));
            }
            gens.extend(piece.rows().iter().map(|v| self.lift(d, v)));
        }
        let max_degree = gens.iter().filter_map(Poly::homogeneous_degree).max().unwrap_or(1);
        let cap = (self.socle_degree() + 1).max(max_degree);
        ArtinianAlgebra::build(self.nvars, self.field, gens, Some(cap))
    }
}

impl GradedSpace for ArtinianAlgebra {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn nvars(&self) -> usize {
        self.nvars
    }

    fn hilbert_function(&self) -> Vec<usize> {
        ArtinianAlgebra::hilbert_function(self)
    }

    fn dim(&self, d: usize) -> usize {
        ArtinianAlgebra::dim(self, d)
    }

    fn action_matrix(&self, f: &Poly, d: usize) -> Result<Matrix> {
        self.multiplication_matrix(f, d)
    }

    fn action_rank(&self, f: &Poly, d: usize) -> Result<usize> {
        match self.multiplication_rows_integer(f, d)? {
            Some((rows, _)) => Ok(integer_rref(self.dim(d), rows).pivots.len()),
            None => Ok(self.multiplication_matrix(f, d)?.rank()),
        }
    }

    fn action_matrix_mod(&self, f: &Poly, d: usize) -> Option<ModMatrix> {
        self.multiplication_matrix_mod(f, d)
    }

    fn as_algebra(&self) -> Option<&ArtinianAlgebra> {
        Some(self)
    }
}

/// A relation among candidate monomials of degree `d`: either the
/// difference of two lifts of one monomial, or a generator.
#[derive(Clone, Copy)]
enum Relation {
    Lifts { monomial: usize, variable: usize },
    Generator(usize),
}

/// Lifts of degree-`d` monomials to the candidate coordinates `K^P`.
struct Lifter<'a> {
    field: FieldSpec,
    prev: &'a DegreePiece,
    monomials: &'a MonomialBasis,
    gens: &'a [&'a Poly],
    /// Candidate column of each monomial, `usize::MAX` if not a candidate.
    column: Vec<usize>,
    width: usize,
    /// `times_standard[j][k]`: column of `x_j` times the `k`-th standard monomial below.
    times_standard: Vec<Vec<usize>>,
    /// Variable used for the canonical lift of each non-candidate monomial.
    first_divisor: Vec<usize>,
}

impl Lifter<'_> {
    fn divisor(&self, mu: usize, j: usize) -> Option<usize> {
        let m = self.monomials.get(mu).div_variable(j)?;
        Some(self.prev.monomials.index_of(&m).expect("degree d-1"))
    }

    fn canonical(&self, mu: usize) -> Option<usize> {
        (self.column[mu] == usize::MAX).then(|| self.first_divisor[mu])
    }

    /// `x_j * NF(mu / x_j)`, or the unit vector of `mu` when `j` is `None`.
    fn exact_lift(&self, mu: usize, j: Option<usize>) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.width];
        match j {
            None => v[self.column[mu]] = self.field.one(),
            Some(j) => {
                let m = self.divisor(mu, j).expect("divisible");
                for (&c, x) in self.times_standard[j].iter().zip(&self.prev.normal_forms[m]) {
                    v[c] = x.clone();
                }
            }
        }
        v
    }

    fn exact_relation(&self, r: Relation, lifts: &[Vec<Scalar>]) -> Vec<Scalar> {
        match r {
            Relation::Lifts { monomial, variable } => {
                let mut v = self.exact_lift(monomial, Some(variable));
                sub_scaled(&mut v, &self.field.one(), &lifts[monomial]);
                v
            }
            Relation::Generator(g) => {
                let mut v = vec![self.field.zero(); self.width];
                for (mu, c) in self.gens[g].terms() {
                    let idx = self.monomials.index_of(mu).expect("generator has degree d");
                    sub_scaled(&mut v, &-c, &lifts[idx]);
                }
                v
            }
        }
    }
}

fn next_piece(
    n: usize,
    field: FieldSpec,
    below: Option<&DegreePiece>,
    prev: &DegreePiece,
    d: usize,
    gens: &[&Poly],
) -> DegreePiece {
    let monomials = MonomialBasis::new(n, d);
    let mut in_candidates = vec![false; monomials.len()];
    for &s in &prev.standard {
        let m = prev.monomials.get(s);
        for j in 0..n {
            in_candidates[monomials.index_of(&m.times_variable(j)).expect("degree d")] = true;
        }
    }
    let candidates: Vec<usize> = (0..monomials.len()).filter(|&i| in_candidates[i]).collect();
    let mut column = vec![usize::MAX; monomials.len()];
    for (c, &i) in candidates.iter().enumerate() {
        column[i] = c;
    }
    let times_standard = (0..n)
        .map(|j| {
            prev.standard
                .iter()
                .map(|&s| {
                    let target = monomials
                        .index_of(&prev.monomials.get(s).times_variable(j))
                        .expect("degree d");
                    column[target]
                })
                .collect()
        })
        .collect();
    let first_divisor = monomials
        .monomials()
        .iter()
        .map(|mu| (0..n).find(|&j| mu.exponents()[j] > 0).expect("positive degree"))
        .collect();
    let lifter = Lifter {
        field,
        prev,
        monomials: &monomials,
        gens,
        column,
        width: candidates.len(),
        times_standard,
        first_divisor,
    };
    let width = lifter.width;

    // Lifting `mu` through `x_j` differs from lifting it through `x_k` by
    // relations with smaller leading monomials whenever `mu / (x_j x_k)` is
    // not standard (normal forms only involve smaller monomials). So one
    // lift per connected component of that graph suffices.
    let mut relation_list = Vec::new();
    for mu in 0..monomials.len() {
        let through: Vec<usize> = (0..n)
            .filter(|&j| lifter.divisor(mu, j).is_some_and(|m| !prev.is_standard(m)))
            .collect();
        let mut component: Vec<usize> = (0..n).collect();
        if let Some(below) = below {
            for (a, &j) in through.iter().enumerate() {
                for &k in &through[..a] {
                    let m = monomials.get(mu).div_variable(j).and_then(|m| m.div_variable(k));
                    let joined = m.is_some_and(|m| {
                        !below.is_standard(below.monomials.index_of(&m).expect("degree d-2"))
                    });
                    if joined {
                        let (cj, ck) = (component[j], component[k]);
                        component.iter_mut().filter(|c| **c == cj).for_each(|c| *c = ck);
                    }
                }
            }
        }
        let canonical = lifter.canonical(mu);
        let mut seen: Vec<usize> = canonical.map(|j| component[j]).into_iter().collect();
        for &j in &through {
            if !seen.contains(&component[j]) {
                seen.push(component[j]);
                relation_list.push(Relation::Lifts { monomial: mu, variable: j });
            }
        }
    }
    relation_list.extend((0..gens.len()).map(Relation::Generator));

    let lifts: Vec<Vec<Scalar>> = (0..monomials.len())
        .map(|mu| lifter.exact_lift(mu, lifter.canonical(mu)))
        .collect();
    let rows: Vec<Vec<Scalar>> = relation_list
        .iter()
        .map(|&r| lifter.exact_relation(r, &lifts))
        .collect();
    let (free, normal_forms): (Vec<usize>, Vec<Vec<Scalar>>) =
        if field == FieldSpec::Rationals {
            let echelon = rational_rref(width, &rows);
            let nf = lifts.iter().map(|lift| echelon.reduce_free(lift)).collect();
            (echelon.free, nf)
        } else {
            let relations = RowSpace::from_vectors(field, width, rows);
            let nf = lifts.iter().map(|lift| relations.reduce_free(lift)).collect();
            (relations.free_columns().collect(), nf)
        };
    let standard: Vec<usize> = free.iter().map(|&c| candidates[c]).collect();
    let modulus = shadow_modulus(field);
    let shadow = normal_forms.iter().map(|v| residues(v, modulus)).collect();
    let integral = (field == FieldSpec::Rationals).then(|| integerize_rows(&normal_forms));
    DegreePiece {
        monomials,
        standard,
        normal_forms,
        shadow,
        integral,
    }
}

/// A graded subspace of `A` (typically an ideal), one echelon basis per degree.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    algebra: Arc<ArtinianAlgebra>,
    pieces: Vec<RowSpace>,
}

impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.pieces == other.pieces
    }
}

impl Eq for GradedSubspace {}

impl GradedSubspace {
    pub fn zero(algebra: &Arc<ArtinianAlgebra>) -> Self {
        let pieces = (0..=algebra.socle_degree())
            .map(|d| RowSpace::zero(algebra.field, algebra.dim(d)))
            .collect();
        GradedSubspace {
            algebra: Arc::clone(algebra),
            pieces,
        }
    }

    pub fn whole(algebra: &Arc<ArtinianAlgebra>) -> Self {
        let pieces = (0..=algebra.socle_degree())
            .map(|d| RowSpace::full(algebra.field, algebra.dim(d)))
            .collect();
        GradedSubspace {
            algebra: Arc::clone(algebra),
            pieces,
        }
    }

    pub fn from_pieces(algebra: &Arc<ArtinianAlgebra>, pieces: Vec<RowSpace>) -> Result<Self> {
        if pieces.len() != algebra.socle_degree() + 1
            || pieces
                .iter()
                .enumerate()
                .any(|(d, p)| p.ambient_dim() != algebra.dim(d) || p.field() != algebra.field)
        {
            return Err(Error::DimensionMismatch("pieces do not match the algebra".into()));
        }
        Ok(GradedSubspace {
            algebra: Arc::clone(algebra),
            pieces,
        })
    }

    pub fn algebra(&self) -> &Arc<ArtinianAlgebra> {
        &self.algebra
    }

    pub fn piece(&self, d: usize) -> Option<&RowSpace> {
        self.pieces.get(d)
    }

    pub fn pieces(&self) -> &[RowSpace] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(RowSpace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(RowSpace::dim).sum()
    }

    pub fn is_whole(&self) -> bool {
        self.total_dim() == self.algebra.total_dim()
    }

    fn check_ambient(&self, other: &GradedSubspace) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_ambient(other)?;
        Ok(GradedSubspace {
            algebra: Arc::clone(&self.algebra),
            pieces: self.pieces.iter().zip(&other.pieces).map(|(a, b)| a.sum(b)).collect(),
        })
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.pieces.iter().zip(&other.pieces).all(|(a, b)| a.is_subspace_of(b)))
    }

    /// Closed under multiplication by every variable.
    pub fn is_ideal(&self) -> bool {
        let a = &self.algebra;
        (0..a.nvars).all(|j| {
            let x = Poly::variable(a.nvars, a.field, j);
            (0..a.socle_degree()).all(|d| {
                let m = a.multiplication_matrix(&x, d).expect("variable is homogeneous");
                self.pieces[d]
                    .rows()
                    .iter()
                    .all(|v| self.pieces[d + 1].contains(&m.mul_vec(v).expect("shapes agree")))
            })
        })
    }
}

/// `(0 :_A f)`: per degree, the kernel of multiplication by `f`.
pub fn ideal_colon(algebra: &Arc<ArtinianAlgebra>, f: &Poly) -> Result<GradedSubspace> {
    algebra.homogeneous_degree_of(f)?;
    let field = algebra.field;
    let pieces = (0..=algebra.socle_degree())
        .map(|d| {
            if let Some((rows, _)) = algebra.multiplication_rows_integer(f, d)? {
                return Ok(RowSpace::integer_kernel(algebra.dim(d), rows));
            }
            let m = algebra.multiplication_matrix(f, d)?;
            Ok(RowSpace::from_vectors(field, algebra.dim(d), m.kernel_basis()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedSubspace {
        algebra: Arc::clone(algebra),
        pieces,
    })
}

/// The principal ideal `(f)` of `A`.
pub fn principal_ideal(algebra: &Arc<ArtinianAlgebra>, f: &Poly) -> Result<GradedSubspace> {
    let k = algebra.homogeneous_degree_of(f)?;
    let field = algebra.field;
    let pieces = (0..=algebra.socle_degree())
        .map(|d| {
            if d < k {
                return Ok(RowSpace::zero(field, algebra.dim(d)));
            }
            Ok(RowSpace::column_space(&algebra.multiplication_matrix(f, d - k)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedSubspace {
        algebra: Arc::clone(algebra),
        pieces,
    })
}

pub fn subspace_sum(u: &GradedSubspace, w: &GradedSubspace) -> Result<GradedSubspace> {
    u.sum(w)
}

/// `V/W` for graded ideals `W ⊆ V` of `A`, with the induced action of
/// the polynomial ring and no degree shift.
#[derive(Clone, Debug)]
pub struct GradedModule {
    numerator: GradedSubspace,
    denominator: GradedSubspace,
    /// Per degree, a basis of `V_d` reduced modulo `W_d`.
    complements: Vec<RowSpace>,
    /// `complements` and the pieces of `W`, modulo the shadow prime.
    shadow: Option<ModuleShadow>,
}

#[derive(Clone, Debug)]
struct ModuleShadow {
    complements: Vec<Vec<Vec<u64>>>,
    denominator: Vec<Vec<Vec<u64>>>,
}

fn rows_mod(spaces: &[RowSpace], p: u64) -> Option<Vec<Vec<Vec<u64>>>> {
    spaces
        .iter()
        .map(|s| s.rows().iter().map(|r| residues(r, p)).collect())
        .collect()
}

pub fn quotient_module(v: &GradedSubspace, w: &GradedSubspace) -> Result<GradedModule> {
    v.check_ambient(w)?;
    let mut complements = Vec::with_capacity(v.pieces.len());
    for (d, (vd, wd)) in v.pieces.iter().zip(&w.pieces).enumerate() {
        if !wd.is_subspace_of(vd) {
            return Err(Error::ContainmentViolated { degree: d });
        }
        complements.push(RowSpace::from_vectors(
            vd.field(),
            vd.ambient_dim(),
            vd.rows().iter().map(|r| wd.reduce(r)),
        ));
    }
    let p = shadow_modulus(v.algebra.field);
    let shadow = rows_mod(&complements, p).and_then(|complements| {
        Some(ModuleShadow {
            complements,
            denominator: rows_mod(&w.pieces, p)?,
        })
    });
    Ok(GradedModule {
        numerator: v.clone(),
        denominator: w.clone(),
        complements,
        shadow,
    })
}

impl GradedModule {
    pub fn algebra(&self) -> &Arc<ArtinianAlgebra> {
        &self.numerator.algebra
    }

    pub fn numerator(&self) -> &GradedSubspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &GradedSubspace {
        &self.denominator
    }

    pub fn dims(&self) -> Vec<usize> {
        self.complements.iter().map(RowSpace::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.complements.iter().all(|c| c.dim() == 0)
    }

    /// The module `A` itself, as `A/0`.
    pub fn whole(algebra: &Arc<ArtinianAlgebra>) -> GradedModule {
        quotient_module(&GradedSubspace::whole(algebra), &GradedSubspace::zero(algebra))
            .expect("0 is contained in A")
    }
}

impl GradedSpace for GradedModule {
    fn field(&self) -> FieldSpec {
        self.algebra().field
    }

    fn nvars(&self) -> usize {
        self.algebra().nvars
    }

    fn hilbert_function(&self) -> Vec<usize> {
        self.dims()
    }

    fn dim(&self, d: usize) -> usize {
        self.complements.get(d).map_or(0, RowSpace::dim)
    }

    fn action_matrix(&self, f: &Poly, d: usize) -> Result<Matrix> {
        let algebra = self.algebra();
        let k = algebra.homogeneous_degree_of(f)?;
        let field = algebra.field;
        let (src, dst) = (GradedSpace::dim(self, d), GradedSpace::dim(self, d + k));
        if src == 0 || dst == 0 {
            return Ok(Matrix::zero(field, dst, src));
        }
        let mult = algebra.multiplication_matrix(f, d)?;
        let target = &self.complements[d + k];
        let denominator = &self.denominator.pieces[d + k];
        let columns: Vec<Vec<Scalar>> = self.complements[d]
            .rows()
            .iter()
            .map(|q| {
                let image = denominator.reduce(&mult.mul_vec(q).expect("shapes agree"));
                
                target
                    .coordinates(&image)
                    .expect("numerator is an ideal, so its image stays inside it")
            })
            .collect();
        Ok(Matrix::from_columns(field, dst, &columns))
    }

    fn action_matrix_mod(&self, f: &Poly, d: usize) -> Option<ModMatrix> {
        let algebra = self.algebra();
        let k = algebra.homogeneous_degree_of(f).ok()?;
        let p = shadow_modulus(algebra.field);
        let (src, dst) = (GradedSpace::dim(self, d), GradedSpace::dim(self, d + k));
        if src == 0 || dst == 0 {
            return Some(ModMatrix::zero(p, dst, src));
        }
        let shadow = self.shadow.as_ref()?;
        let mult = algebra.multiplication_matrix_mod(f, d)?;
        let w_pivots = self.denominator.pieces[d + k].pivots();
        let w_rows = &shadow.denominator[d + k];
        let target_pivots = self.complements[d + k].pivots();
        let columns: Vec<Vec<u64>> = shadow.complements[d]
            .iter()
            .map(|q| {
                let mut image = vec![0u64; mult.rows()];
                for (j, &x) in q.iter().enumerate() {
                    if x != 0 {
                        for (i, out) in image.iter_mut().enumerate() {
                            let m = mult.get(i, j);
                            if m != 0 {
                                *out = add_mod(*out, mul_mod(m, x, p), p);
                            }
                        }
                    }
                }
                // Reduced echelon rows vanish at each other's pivots, so the
                // coefficients can all be read off before subtracting.
                let coeffs: Vec<u64> = w_pivots.iter().map(|&c| image[c]).collect();
                for (row, c) in w_rows.iter().zip(coeffs) {
                    sub_scaled_mod(&mut image, c, row, p);
                }
                target_pivots.iter().map(|&c| image[c]).collect()
            })
            .collect();
        Some(ModMatrix::from_columns(p, dst, &columns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearForm;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, Q, i)
    }

    fn lin(c: &[i64]) -> Poly {
        LinearForm::from_i64(Q, c).unwrap().to_poly()
    }

    fn algebra(n: usize, gens: Vec<Poly>) -> Arc<ArtinianAlgebra> {
        Arc::new(ArtinianAlgebra::build(n, Q, gens, None).unwrap())
    }

    /// K[x,y]/(x(x+y), y^2)
    fn skew() -> Arc<ArtinianAlgebra> {
        algebra(2, vec![var(2, 0).multiply(&lin(&[1, 1])).unwrap(), var(2, 1).pow(2)])
    }

    fn xy_squares() -> Arc<ArtinianAlgebra> {
        algebra(2, vec![var(2, 0).pow(2), var(2, 1).pow(2)])
    }

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    #[test]
    fn hilbert_functions_of_small_quotients() {
        assert_eq!(algebra(1, vec![var(1, 0).pow(3)]).hilbert_function(), vec![1, 1, 1]);
        let a = algebra(2, vec![var(2, 0).pow(2), var(2, 1).pow(3)]);
        assert_eq!(a.hilbert_function(), vec![1, 2, 2, 1]);
        assert_eq!(a.socle_degree(), 3);
        assert_eq!(skew().hilbert_function(), vec![1, 2, 1]);
        assert_eq!(xy_squares().hilbert_function(), vec![1, 2, 1]);
        let a = algebra(3, (0..3).map(|i| var(3, i).pow(2)).collect());
        assert_eq!(a.hilbert_function(), vec![1, 3, 3, 1]);
        assert_eq!(algebra(1, vec![var(1, 0).pow(5)]).hilbert_function(), vec![1; 5]);
    }

    #[test]
    fn not_artinian_detected() {
        let shared = lin(&[1, 1]);
        let gens = vec![
            var(2, 0).multiply(&shared).unwrap(),
            var(2, 1).multiply(&shared).unwrap(),
        ];
        assert!(matches!(
            ArtinianAlgebra::build(2, Q, gens, None),
            Err(Error::NotArtinian { .. })
        ));
        assert!(matches!(
            ArtinianAlgebra::build(2, Q, vec![var(2, 0).pow(2)], None),
            Err(Error::NotArtinian { .. })
        ));
    }

    #[test]
    fn bad_generators_rejected() {
        let inhom = var(2, 0).pow(2).add(&var(2, 1)).unwrap();
        assert_eq!(
            ArtinianAlgebra::build(2, Q, vec![inhom], None).unwrap_err(),
            Error::NotHomogeneous
        );
        assert_eq!(
            ArtinianAlgebra::build(2, Q, vec![Poly::zero(2, Q)], None).unwrap_err(),
            Error::ZeroGenerator
        );
        assert!(matches!(
            ArtinianAlgebra::build(1, Q, vec![var(1, 0).pow(4)], Some(2)),
            Err(Error::DegreeCapTooSmall { .. })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let a = skew();
        // standard monomials of degree 2: x*y (x^2 ≡ −xy, y^2 ≡ 0)
        let std2 = a.standard_monomials(2);
        assert_eq!(std2, vec![Monomial::new(vec![1, 1])]);
        let nf = a.normal_form(&var(2, 0).pow(2)).unwrap();
        assert_eq!(nf.piece(2), &[q(-1)]);
        assert!(a.normal_form(&a.generators()[0]).unwrap().is_zero());
        let one = a.normal_form(&Poly::one(2, Q)).unwrap();
        assert_eq!(one.piece(0), &[q(1)]);
        assert!(one.pieces()[1..].iter().flatten().all(Scalar::is_zero));
    }

    #[test]
    fn multiplication_matrix_examples() {
        let a = xy_squares();
        let z = lin(&[1, 1]);
        let m0 = a.multiplication_matrix(&z, 0).unwrap();
        assert_eq!(m0, Matrix::from_i64_rows(Q, &[&[1], &[1]]).unwrap());
        let m1 = a.multiplication_matrix(&z, 1).unwrap();
        assert_eq!(m1, Matrix::from_i64_rows(Q, &[&[1, 1]]).unwrap());
        assert_eq!(m1.rank(), 1);
        let id = a.multiplication_matrix(&Poly::one(2, Q), 1).unwrap();
        assert_eq!(id, Matrix::identity(Q, 2));
        let out_of_range = a.multiplication_matrix(&z, 2).unwrap();
        assert_eq!((out_of_range.rows(), out_of_range.cols()), (0, 1));
    }

    #[test]
    fn colon_examples() {
        let a = xy_squares();
        let c = ideal_colon(&a, &var(2, 0)).unwrap();
        assert_eq!(c.dims(), vec![0, 1, 1]);
        // degree-1 piece is span{x}
        assert_eq!(c.piece(1).unwrap().rows(), &[vec![q(1), q(0)]]);
        assert!(c.is_ideal());

        assert!(ideal_colon(&a, &var(2, 0).pow(2)).unwrap().is_whole());

        let b = skew();
        let c = ideal_colon(&b, &var(2, 0)).unwrap();
        assert_eq!(c.dims(), vec![0, 1, 1]);
        assert_eq!(c.piece(1).unwrap().rows(), &[vec![q(1), q(1)]]);
    }

    #[test]
    fn sums_and_principal_ideals() {
        let a = xy_squares();
        let px = principal_ideal(&a, &var(2, 0)).unwrap();
        assert_eq!(px.dims(), vec![0, 1, 1]);
        let zero = GradedSubspace::zero(&a);
        assert_eq!(subspace_sum(&px, &zero).unwrap(), px);
        assert_eq!(subspace_sum(&px, &px).unwrap(), px);
        let other = xy_squares();
        assert_eq!(
            subspace_sum(&px, &GradedSubspace::zero(&other)).unwrap_err(),
            Error::AmbientMismatch
        );
    }

    #[test]
    fn quotient_module_examples() {
        let a = xy_squares();
        let whole = GradedSubspace::whole(&a);
        let px = principal_ideal(&a, &var(2, 0)).unwrap();
        let u = quotient_module(&whole, &px).unwrap();
        assert_eq!(u.dims(), vec![1, 1, 0]);
        assert_eq!(u.effective_range(), Some((0, 1)));

        let zero_mod = quotient_module(&px, &px).unwrap();
        assert!(zero_mod.is_zero());
        assert_eq!(zero_mod.effective_range(), None);

        let all = GradedModule::whole(&a);
        assert_eq!(all.dims(), a.hilbert_function());
        assert_eq!(
            quotient_module(&px, &whole).unwrap_err(),
            Error::ContainmentViolated { degree: 0 }
        );
    }

    #[test]
    fn module_action_is_induced() {
        // A/(x) ≅ K[y]/(y^2): multiplication by y from degree 0 to 1 is nonzero, by x is zero.
        let a = xy_squares();
        let u = quotient_module(&GradedSubspace::whole(&a), &principal_ideal(&a, &var(2, 0)).unwrap())
            .unwrap();
        assert_eq!(u.action_matrix(&var(2, 1), 0).unwrap().rank(), 1);
        assert!(u.action_matrix(&var(2, 0), 0).unwrap().is_zero());
    }

    #[test]
    fn ideal_span_has_pivots_at_nonstandard_monomials() {
        let a = skew();
        let span = a.ideal_span_echelon(2);
        assert_eq!(span.rows(), 2);
        let r = span.rref();
        assert_eq!(r.reduced, span);
        assert_eq!(a.ideal_rank(2), 2);
    }
}
