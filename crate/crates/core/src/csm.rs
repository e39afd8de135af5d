//! Central simple modules of a pair `(A, z)`.
//!
//! With `p` least such that `(0:z^p) = A`, the ideals
//! `C_k = (0:z^k) + (z)` descend from `C_p = A` to `C_0 = (z)`. The nonzero
//! successive quotients `C_{p−i}/C_{p−i−1}`, `i = 0..p−1`, are the central
//! simple modules `U_1, ..., U_s`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graded::{
    ideal_colon, principal_ideal, quotient_module, ArtinianAlgebra, GradedModule, GradedSpace,
    GradedSubspace,
};
use crate::lefschetz::{find_sl_element, SlWitness};
use crate::poly::{LinearForm, Poly};
use crate::sampling::{child_seed, stream_rng, Sampler};
use crate::scalar::{Matrix, RowSpace};

/// Random candidates tried for `z` after the variables in [`theorem24_crosscheck`].
pub const DEFAULT_RANDOM_CANDIDATES: usize = 5;

#[derive(Clone, Debug)]
pub struct CsmChain {
    algebra: Arc<ArtinianAlgebra>,
    z: LinearForm,
    /// `(0:z^k)` for `k = 0..=p`.
    colons: Vec<GradedSubspace>,
    principal: GradedSubspace,
    /// `C_p, C_{p−1}, ..., C_0`.
    chain: Vec<GradedSubspace>,
    modules: Vec<GradedModule>,
    /// The `i` of `C_{p−i}/C_{p−i−1}` for each module.
    positions: Vec<usize>,
}

/// The annihilators `(0:z^k)`, `k = 0, 1, ...`, up to the first equal to `A`,
/// each computed from the last as `{a : z a ∈ (0:z^k)}`.
fn colon_chain(a: &Arc<ArtinianAlgebra>, z: &Poly) -> Result<Vec<GradedSubspace>> {
    let field = a.field();
    let top = a.socle_degree();
    let steps = (0..=top)
        .map(|d| Step::new(a, z, d))
        .collect::<Result<Vec<Step>>>()?;
    let mut colons = vec![GradedSubspace::zero(a)];
    while !colons.last().expect("nonempty").is_whole() {
        if colons.len() > top + 2 {
            return Err(Error::InvalidArgument("multiplication map is not nilpotent".into()));
        }
        let prev = colons.last().expect("nonempty");
        let pieces = (0..=top)
            .map(|d| match prev.piece(d + 1) {
                None => RowSpace::full(field, a.dim(d)),
                Some(target) => steps[d].preimage(target),
            })
            .collect();
        colons.push(GradedSubspace::from_pieces(a, pieces)?);
    }
    Ok(colons)
}

/// `×z : A_d → A_{d+1}`, kept as integer rows over `Q`.
enum Step {
    Integer(Vec<Vec<BigInt>>),
    Exact(Matrix),
}

impl Step {
    fn new(a: &ArtinianAlgebra, z: &Poly, d: usize) -> Result<Self> {
        Ok(match a.multiplication_rows_integer(z, d)? {
            Some((rows, _)) => Step::Integer(rows),
            None => Step::Exact(a.multiplication_matrix(z, d)?),
        })
    }

    /// `{a : z a ∈ target}`.
    fn preimage(&self, target: &RowSpace) -> RowSpace {
        match self {
            Step::Integer(rows) => {
                let cols = rows.first().map_or(0, Vec::len);
                let echelon = target.integer_echelon();
                let columns: Vec<Vec<BigInt>> = (0..cols)
                    .map(|j| {
                        let c: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
                        echelon.scaled_residual(&c)
                    })
                    .collect();
                let composite = (0..target.ambient_dim() - target.dim())
                    .map(|i| columns.iter().map(|c| c[i].clone()).collect())
                    .collect();
                RowSpace::integer_kernel(cols, composite)
            }
            Step::Exact(m) => {
                let field = m.field();
                let columns: Vec<_> = (0..m.cols()).map(|j| target.reduce_free(&m.column(j))).collect();
                let rows = target.ambient_dim() - target.dim();
                let composite = Matrix::from_columns(field, rows, &columns);
                RowSpace::from_vectors(field, m.cols(), composite.kernel_basis())
            }
        }
    }
}

/// Builds the chain `C_p ⊇ ... ⊇ C_0` and its nonzero quotients.
pub fn csm_chain(a: &Arc<ArtinianAlgebra>, z: &LinearForm) -> Result<CsmChain> {
    if z.nvars() != a.nvars() {
        return Err(Error::VariableCountMismatch {
            left: a.nvars(),
            right: z.nvars(),
        });
    }
    let zp = z.to_poly();
    let colons = colon_chain(a, &zp)?;
    let principal = principal_ideal(a, &zp)?;
    let chain = colons
        .iter()
        .rev()
        .map(|c| c.sum(&principal))
        .collect::<Result<Vec<_>>>()?;
    let mut modules = Vec::new();
    let mut positions = Vec::new();
    for (i, pair) in chain.windows(2).enumerate() {
        let u = quotient_module(&pair[0], &pair[1])?;
        if !u.is_zero() {
            modules.push(u);
            positions.push(i);
        }
    }
    Ok(CsmChain {
        algebra: Arc::clone(a),
        z: z.clone(),
        colons,
        principal,
        chain,
        modules,
        positions,
    })
}

impl CsmChain {
    pub fn algebra(&self) -> &Arc<ArtinianAlgebra> {
        &self.algebra
    }

    pub fn z(&self) -> &LinearForm {
        &self.z
    }

    /// Least `p` with `(0:z^p) = A`.
    pub fn p(&self) -> usize {
        self.colons.len() - 1
    }

    /// Least `q` with `C_q ≠ C_0`.
    pub fn q(&self) -> usize {
        let bottom = self.chain.last().expect("C_0 exists");
        (1..=self.p())
            .find(|&k| self.c(k) != bottom)
            .expect("C_p = A differs from (z)")
    }

    pub fn s(&self) -> usize {
        self.modules.len()
    }

    /// `C_k = (0:z^k) + (z)`.
    pub fn c(&self, k: usize) -> &GradedSubspace {
        &self.chain[self.p() - k]
    }

    /// `(0:z^k)`.
    pub fn colon(&self, k: usize) -> &GradedSubspace {
        &self.colons[k]
    }

    pub fn principal(&self) -> &GradedSubspace {
        &self.principal
    }

    /// `C_p, ..., C_0`, descending.
    pub fn chain(&self) -> &[GradedSubspace] {
        &self.chain
    }

    /// `U_1, ..., U_s`.
    pub fn modules(&self) -> &[GradedModule] {
        &self.modules
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn module_hilbert_functions(&self) -> Vec<Vec<usize>> {
        self.modules.iter().map(GradedModule::dims).collect()
    }

    /// `Σ dim U_i = dim A/zA`.
    pub fn telescopes(&self) -> bool {
        let total: usize = self.modules.iter().map(|u| u.total_dim()).sum();
        total == self.algebra.total_dim() - self.principal.total_dim()
    }

    /// The chain of `(A/(0:z^q), z)`, whose modules should be `U_1..U_{s−1}`.
    pub fn reduced_chain(&self) -> Result<CsmChain> {
        let b = Arc::new(self.algebra.quotient_by(self.colon(self.q()))?);
        csm_chain(&b, &self.z)
    }

    /// Searches each `U_i` for a strong Lefschetz element; module `i` uses
    /// the child seed `i` of `seed`.
    pub fn module_slp(&self, trials: usize, seed: u64, sampler: &Sampler) -> Result<CsmSlpReport> {
        let modules = self
            .modules
            .iter()
            .zip(&self.positions)
            .enumerate()
            .map(|(i, (u, &position))| {
                Ok(CsmSlp {
                    position,
                    hilbert_function: u.dims(),
                    witness: find_sl_element(u, trials, child_seed(seed, i as u64), sampler)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CsmSlpReport {
            z: self.z.clone(),
            all_have_slp: modules.iter().all(|m| m.witness.is_some()),
            modules,
        })
    }
}

/// Recomputes `C_q` directly from `(0:z^q)` and checks that the last module
/// is `C_q/(z)`.
pub fn last_csm_check(chain: &CsmChain) -> Result<bool> {
    let Some(last) = chain.modules.last() else {
        return Ok(true);
    };
    let a = &chain.algebra;
    let zp = chain.z.to_poly();
    let q = chain.q();
    let colon_q = ideal_colon(a, &zp.pow(q as u32))?;
    let principal = principal_ideal(a, &zp)?;
    let c_q = colon_q.sum(&principal)?;
    let expected = quotient_module(&c_q, &principal)?;
    Ok(last.numerator() == &c_q && last.denominator() == &principal && last.dims() == expected.dims())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmSlp {
    pub position: usize,
    pub hilbert_function: Vec<usize>,
    pub witness: Option<SlWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmSlpReport {
    pub z: LinearForm,
    pub modules: Vec<CsmSlp>,
    pub all_have_slp: bool,
}

/// Whether every central simple module of `(A, z)` has a strong Lefschetz
/// element among `trials` random candidates.
pub fn all_csm_have_slp(
    a: &Arc<ArtinianAlgebra>,
    z: &LinearForm,
    trials: usize,
    seed: u64,
    sampler: &Sampler,
) -> Result<CsmSlpReport> {
    csm_chain(a, z)?.module_slp(trials, seed, sampler)
}

/// Both sides of the equivalence for a Gorenstein algebra: (i) `A` has a
/// strong Lefschetz element, (ii) some `z` has all its central simple
/// modules strong Lefschetz. A missing witness on either side only means
/// none was found among the samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm24Report {
    pub hilbert_function: Vec<usize>,
    pub algebra_witness: Option<SlWitness>,
    /// The first candidate `z` that worked, with its module reports.
    pub csm_witness: Option<CsmSlpReport>,
    pub candidates_tried: usize,
}

impl Thm24Report {
    pub fn algebra_side(&self) -> bool {
        self.algebra_witness.is_some()
    }

    pub fn csm_side(&self) -> bool {
        self.csm_witness.is_some()
    }

    pub fn agree(&self) -> bool {
        self.algebra_side() == self.csm_side()
    }
}

/// `h_c = 1` and `h` symmetric: a necessary condition for Gorenstein, and
/// the guard used before [`theorem24_crosscheck`].
pub fn gorenstein_certificate(h: &[usize]) -> Result<()> {
    if h.last() != Some(&1) {
        return Err(Error::NotGorensteinCertificate(alloc::format!(
            "top Hilbert value is {:?}, not 1",
            h.last()
        )));
    }
    if h.iter().ne(h.iter().rev()) {
        return Err(Error::NotGorensteinCertificate("Hilbert function is not symmetric".into()));
    }
    Ok(())
}

/// Evaluates both sides independently. Candidates for `z` are the
/// variables, then `random_candidates` random forms.
pub fn theorem24_crosscheck(
    a: &Arc<ArtinianAlgebra>,
    trials: usize,
    seed: u64,
    sampler: &Sampler,
    random_candidates: usize,
) -> Result<Thm24Report> {
    let h = a.hilbert_function();
    gorenstein_certificate(&h)?;
    let algebra_witness = find_sl_element(a.as_ref(), trials, child_seed(seed, 0), sampler)?;
    let n = a.nvars();
    let field = a.field();
    let variables = (0..n).map(|i| {
        let mut coeffs = vec![field.zero(); n];
        coeffs[i] = field.one();
        LinearForm::new(coeffs).expect("unit vector is nonzero")
    });
    let random = (0..random_candidates)
        .map(|r| sampler.linear_form(n, &mut stream_rng(child_seed(seed, 1), r as u64)));
    let mut candidates_tried = 0;
    let mut csm_witness = None;
    for (c, z) in variables.chain(random).enumerate() {
        candidates_tried += 1;
        let report = all_csm_have_slp(a, &z, trials, child_seed(seed, 2 + c as u64), sampler)?;
        if report.all_have_slp {
            csm_witness = Some(report);
            break;
        }
    }
    Ok(Thm24Report {
        hilbert_function: h,
        algebra_witness,
        csm_witness,
        candidates_tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, Q, i)
    }

    fn lin(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(Q, c).unwrap()
    }

    fn algebra(n: usize, gens: Vec<Poly>) -> Arc<ArtinianAlgebra> {
        Arc::new(ArtinianAlgebra::build(n, Q, gens, None).unwrap())
    }

    fn trim(h: &[usize]) -> &[usize] {
        let end = h.iter().rposition(|&x| x > 0).map_or(0, |e| e + 1);
        &h[..end]
    }

    fn sampler() -> Sampler {
        Sampler::for_search(Q)
    }

    #[test]
    fn squares_in_two_variables() {
        let a = algebra(2, vec![var(2, 0).pow(2), var(2, 1).pow(2)]);
        let chain = csm_chain(&a, &lin(&[1, 0])).unwrap();
        assert_eq!((chain.p(), chain.s(), chain.q()), (2, 1, 2));
        assert_eq!(trim(&chain.module_hilbert_functions()[0]), &[1, 1]);
        assert!(chain.telescopes());
        assert!(last_csm_check(&chain).unwrap());
        let slp = chain.module_slp(3, 1, &sampler()).unwrap();
        assert!(slp.all_have_slp);
    }

    #[test]
    fn skew_quotient_has_two_modules() {
        let a = algebra(
            2,
            vec![var(2, 0).multiply(&lin(&[1, 1]).to_poly()).unwrap(), var(2, 1).pow(2)],
        );
        let chain = csm_chain(&a, &lin(&[1, 0])).unwrap();
        assert_eq!((chain.p(), chain.s(), chain.q()), (3, 2, 1));
        assert_eq!(chain.module_hilbert_functions(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(chain.positions(), &[0, 2]);
        assert!(chain.telescopes());
        assert!(last_csm_check(&chain).unwrap());
        assert!(chain.module_slp(2, 0, &sampler()).unwrap().all_have_slp);

        let reduced = chain.reduced_chain().unwrap();
        assert_eq!(reduced.s(), chain.s() - 1);
        assert_eq!(trim(&reduced.module_hilbert_functions()[0]), &[1]);
    }

    #[test]
    fn chain_is_monotone() {
        let a = algebra(3, vec![var(3, 0).pow(2), var(3, 1).pow(3), var(3, 2).pow(2)]);
        let chain = csm_chain(&a, &lin(&[1, 2, 0])).unwrap();
        for pair in chain.chain().windows(2) {
            assert!(pair[1].is_subspace_of(&pair[0]).unwrap());
        }
        for k in 0..chain.p() {
            assert!(chain.colon(k).is_subspace_of(chain.colon(k + 1)).unwrap());
            assert!(chain.colon(k).is_ideal());
        }
        assert!(chain.telescopes());
        assert!(last_csm_check(&chain).unwrap());
    }

    #[test]
    fn one_variable_has_one_module() {
        let a = algebra(1, vec![var(1, 0).pow(5)]);
        let chain = csm_chain(&a, &lin(&[1])).unwrap();
        assert_eq!(chain.s(), 1);
        assert_eq!(trim(&chain.module_hilbert_functions()[0]), &[1]);
        assert!(last_csm_check(&chain).unwrap());
    }

    #[test]
    fn crosscheck_on_cubes_of_squares() {
        let a = algebra(3, (0..3).map(|i| var(3, i).pow(2)).collect());
        let r = theorem24_crosscheck(&a, 3, 9, &sampler(), DEFAULT_RANDOM_CANDIDATES).unwrap();
        assert!(r.algebra_side() && r.csm_side() && r.agree());

        let b = algebra(1, vec![var(1, 0).pow(4)]);
        let r = theorem24_crosscheck(&b, 1, 9, &sampler(), 0).unwrap();
        assert!(r.agree() && r.algebra_side());
    }

    #[test]
    fn gorenstein_guard() {
        let a = algebra(2, vec![var(2, 0).pow(2), var(2, 0).multiply(&var(2, 1)).unwrap(), var(2, 1).pow(2)]);
        assert!(matches!(
            theorem24_crosscheck(&a, 1, 0, &sampler(), 0),
            Err(Error::NotGorensteinCertificate(_))
        ));
        assert!(gorenstein_certificate(&[1, 2, 1]).is_ok());
        assert!(gorenstein_certificate(&[1, 2, 2]).is_err());
    }
}
