//! Instance families, complete-intersection certificates and verification
//! drivers.
//!
//! Two families are covered. The first has generators `x_i^{d_i} l_i` with
//! `l_i = a_{i1}x_1 + ... + a_{i,i+1}x_{i+1}` for `i < n` and `l_n` a full
//! linear form. The second has generators that are products of powers of
//! linear forms with random coefficients.
//!
//! Seeds: a verification with seed `s` searches the algebra with
//! `child_seed(s, 0)` and the central simple modules with `child_seed(s, 1)`.
//! A family draw with seed `s` takes its shape from `child_seed(s, 0)`, its
//! coefficients from `child_seed(s, 1)` and verifies with `child_seed(s, 2)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::csm::{csm_chain, last_csm_check};
use crate::error::{Error, Result};
use crate::graded::ArtinianAlgebra;
use crate::lefschetz::{find_sl_element, full_rank_profile, Partition, Verdict};
use crate::poly::{monomials_of_degree, FactoredGenerator, LinearForm, Poly};
use crate::sampling::{child_seed, stream_rng, Sampler, INSTANCE_COEFF_RANGE};
use crate::scalar::{FieldSpec, Matrix};

/// Draws attempted before [`Error::RetriesExhausted`].
pub const MAX_RETRIES: usize = 64;

/// Which principal minors must be nonzero for the first family to be a
/// complete intersection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MinorGate {
    /// Only `det M[1..k, 1..k]`, `k = 1..n`. Weaker: `[[1,1],[1,0]]` passes
    /// although `x(x+y), yx` share the factor `x`.
    Leading,
    /// Every principal submatrix, `2^n − 1` determinants.
    #[default]
    AllPrincipal,
}

impl MinorGate {
    pub fn as_str(self) -> &'static str {
        match self {
            MinorGate::Leading => "leading",
            MinorGate::AllPrincipal => "all-principal",
        }
    }
}

pub fn ci_minors_check(m: &Matrix, gate: MinorGate) -> Result<bool> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::NotSquare { rows: n, cols: m.cols() });
    }
    let nonzero = |idx: &[usize]| -> Result<bool> { Ok(!m.submatrix(idx, idx).determinant()?.is_zero()) };
    match gate {
        MinorGate::Leading => {
            for k in 1..=n {
                let idx: Vec<usize> = (0..k).collect();
                if !nonzero(&idx)? {
                    return Ok(false);
                }
            }
        }
        MinorGate::AllPrincipal => {
            if n >= usize::BITS as usize - 1 || n > 24 {
                return Err(Error::InvalidArgument(format!("{n} is too many rows for all principal minors")));
            }
            for mask in 1usize..1 << n {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                if !nonzero(&idx)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Coefficients of `∏ (1 − t^{e_i}) / (1 − t)^n = ∏ (1 + t + ... + t^{e_i − 1})`.
pub fn koszul_hilbert_function(degrees: &[usize]) -> Vec<usize> {
    degrees.iter().fold(vec![1usize], |acc, &e| {
        if e == 0 {
            return vec![0];
        }
        let mut out = vec![0; acc.len() + e - 1];
        for (i, &a) in acc.iter().enumerate() {
            for o in &mut out[i..i + e] {
                *o += a;
            }
        }
        out
    })
}

/// For `n` generators in `n` variables the Hilbert function matches the
/// Koszul one exactly when the generators form a regular sequence.
pub fn ci_hilbert_certificate(a: &ArtinianAlgebra, degrees: &[usize]) -> Result<bool> {
    let n = a.nvars();
    for actual in [degrees.len(), a.generators().len()] {
        if actual != n {
            return Err(Error::GeneratorCountMismatch { expected: n, actual });
        }
    }
    Ok(a.hilbert_function() == koszul_hilbert_function(degrees))
}

/// `x_1^{e_1}, ..., x_n^{e_n}`.
pub fn monomial_ci(field: FieldSpec, degrees: &[usize]) -> Vec<Poly> {
    let n = degrees.len();
    degrees
        .iter()
        .enumerate()
        .map(|(i, &e)| Poly::variable(n, field, i).pow(e as u32))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm31Instance {
    degrees: Vec<usize>,
    matrix: Matrix,
}

impl Thm31Instance {
    /// Requires `a_{ij} = 0` for `j > i + 1` in every row but the last, and
    /// no zero row.
    pub fn new(degrees: Vec<usize>, matrix: Matrix) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::ShapeViolation("no variables".into()));
        }
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::ShapeViolation(format!(
                "matrix is {}x{}, expected {n}x{n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::ShapeViolation(format!("d_{} is zero", i + 1)));
        }
        for i in 0..n {
            if i + 1 < n {
                if let Some(j) = (i + 2..n).find(|&j| !matrix.get(i, j).is_zero()) {
                    return Err(Error::ShapeViolation(format!(
                        "a_{}{} must vanish",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if matrix.row(i).iter().all(|x| x.is_zero()) {
                return Err(Error::ShapeViolation(format!("l_{} is zero", i + 1)));
            }
        }
        Ok(Thm31Instance { degrees, matrix })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn linear_forms(&self) -> Vec<LinearForm> {
        (0..self.n())
            .map(|i| LinearForm::new(self.matrix.row(i).to_vec()).expect("rows are nonzero"))
            .collect()
    }

    /// Degrees of the generators from [`build_thm31`].
    pub fn generator_degrees(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d + 1).collect()
    }
}

/// `x_i^{d_i} l_i` for `i = 1..n`, or `x_1^{d_1 + 1}` when `n = 1`.
pub fn build_thm31(inst: &Thm31Instance) -> Vec<Poly> {
    let (n, field) = (inst.n(), inst.field());
    if n == 1 {
        return vec![Poly::variable(1, field, 0).pow(inst.degrees[0] as u32 + 1)];
    }
    inst.linear_forms()
        .iter()
        .zip(&inst.degrees)
        .enumerate()
        .map(|(i, (l, &d))| {
            Poly::variable(n, field, i)
                .pow(d as u32)
                .multiply(&l.to_poly())
                .expect("same ring")
        })
        .collect()
}

/// Random shape-conforming matrix with entries in `[−range, range]`
/// (nonzero residues over `F_p`), redrawn until `gate` passes. Returns the
/// matrix and the number of rejected draws.
pub fn random_thm31_matrix<R: Rng + ?Sized>(
    field: FieldSpec,
    n: usize,
    range: i64,
    gate: MinorGate,
    rng: &mut R,
) -> Result<(Matrix, usize)> {
    let sampler = Sampler::symmetric(field, range);
    for rejected in 0..MAX_RETRIES {
        let m = Matrix::from_fn(field, n, n, |i, j| {
            if i + 1 < n && j > i + 1 {
                field.zero()
            } else {
                sampler.scalar(rng)
            }
        })?;
        if ci_minors_check(&m, gate)? {
            return Ok((m, rejected));
        }
    }
    Err(Error::RetriesExhausted { retries: MAX_RETRIES })
}

#[derive(Clone, Debug)]
pub struct Thm41Instance {
    forms: Vec<Vec<LinearForm>>,
    multiplicities: Vec<Vec<u32>>,
    seed: Option<u64>,
    retries: usize,
    /// The quotient certified by [`build_thm41`], reused by [`verify_thm41`].
    algebra: Option<Arc<ArtinianAlgebra>>,
}

impl PartialEq for Thm41Instance {
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
            && self.multiplicities == other.multiplicities
            && self.seed == other.seed
            && self.retries == other.retries
    }
}

impl Eq for Thm41Instance {}

impl Thm41Instance {
    /// `F_i = ∏_j L_{ij}^{d_{ij}}` from given forms.
    pub fn new(forms: Vec<Vec<LinearForm>>, multiplicities: Vec<Vec<u32>>) -> Result<Self> {
        let n = forms.len();
        if n == 0 || multiplicities.len() != n {
            return Err(Error::ShapeViolation("need one factor list per variable".into()));
        }
        for (i, (ls, ds)) in forms.iter().zip(&multiplicities).enumerate() {
            if ls.is_empty() || ls.len() != ds.len() {
                return Err(Error::ShapeViolation(format!("F_{} has mismatched factors", i + 1)));
            }
            if ds.contains(&0) {
                return Err(Error::ShapeViolation(format!("F_{} has a zero multiplicity", i + 1)));
            }
            if let Some(l) = ls.iter().find(|l| l.nvars() != n) {
                return Err(Error::VariableCountMismatch { left: n, right: l.nvars() });
            }
        }
        let field = forms[0][0].field();
        if forms.iter().flatten().any(|l| l.field() != field) {
            return Err(Error::MixedField);
        }
        Ok(Thm41Instance {
            forms,
            multiplicities,
            seed: None,
            retries: 0,
            algebra: None,
        })
    }

    pub fn n(&self) -> usize {
        self.forms.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.forms[0][0].field()
    }

    /// `L_{ij}`, indexed `[i][j]` from zero.
    pub fn forms(&self) -> &[Vec<LinearForm>] {
        &self.forms
    }

    pub fn multiplicities(&self) -> &[Vec<u32>] {
        &self.multiplicities
    }

    /// Seed the coefficients were drawn from, if random.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Draws discarded before the certificate passed.
    pub fn retries(&self) -> usize {
        self.retries
    }

    pub fn generators(&self) -> Vec<FactoredGenerator> {
        self.forms
            .iter()
            .zip(&self.multiplicities)
            .map(|(ls, ds)| {
                FactoredGenerator::new(ls.iter().cloned().zip(ds.iter().copied()).collect())
                    .expect("validated factors")
            })
            .collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.generators().iter().map(FactoredGenerator::expand).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .map(|ds| ds.iter().map(|&d| d as usize).sum())
            .collect()
    }
}

/// Draws every `L_{ij}` with coefficients in `[−coeff_range, coeff_range]`
/// from stream `k` of `seed` on attempt `k`, until the generators pass
/// [`ci_hilbert_certificate`].
pub fn build_thm41(
    field: FieldSpec,
    multiplicities: &[Vec<u32>],
    seed: u64,
    coeff_range: i64,
) -> Result<Thm41Instance> {
    let n = multiplicities.len();
    let sampler = Sampler::symmetric(field, coeff_range);
    for attempt in 0..MAX_RETRIES {
        let mut rng = stream_rng(seed, attempt as u64);
        let forms = multiplicities
            .iter()
            .map(|ds| ds.iter().map(|_| sampler.linear_form(n, &mut rng)).collect())
            .collect();
        let mut inst = Thm41Instance::new(forms, multiplicities.to_vec())?;
        let a = match ArtinianAlgebra::build(n, field, inst.polys(), None) {
            Ok(a) => a,
            Err(Error::NotArtinian { .. }) => continue,
            Err(e) => return Err(e),
        };
        if ci_hilbert_certificate(&a, &inst.degrees())? {
            inst.seed = Some(seed);
            inst.retries = attempt;
            inst.algebra = Some(Arc::new(a));
            return Ok(inst);
        }
    }
    Err(Error::RetriesExhausted { retries: MAX_RETRIES })
}

/// Random sizes for the first family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm31Family {
    pub field: FieldSpec,
    pub nvars: Vec<usize>,
    pub max_degree: usize,
    pub coeff_range: i64,
    pub gate: MinorGate,
}

impl Thm31Family {
    pub fn new(field: FieldSpec) -> Self {
        Thm31Family {
            field,
            nvars: vec![2, 3, 4],
            max_degree: 3,
            coeff_range: INSTANCE_COEFF_RANGE,
            gate: MinorGate::default(),
        }
    }

    /// The instance for `seed` and the number of matrices the gate rejected.
    pub fn draw(&self, seed: u64) -> Result<(Thm31Instance, usize)> {
        if self.nvars.is_empty() || self.max_degree == 0 {
            return Err(Error::InvalidArgument("empty family".into()));
        }
        let mut shape = stream_rng(child_seed(seed, 0), 0);
        let n = self.nvars[shape.gen_range(0..self.nvars.len())];
        let degrees = (0..n).map(|_| shape.gen_range(1..=self.max_degree)).collect();
        let mut coeffs = stream_rng(child_seed(seed, 1), 0);
        let (m, rejected) = random_thm31_matrix(self.field, n, self.coeff_range, self.gate, &mut coeffs)?;
        Ok((Thm31Instance::new(degrees, m)?, rejected))
    }

    pub fn verify(&self, seed: u64, trials: usize) -> Result<Record> {
        let (inst, rejected) = self.draw(seed)?;
        let mut record = verify_thm31(&inst, self.gate, trials, child_seed(seed, 2))?;
        record.retries = rejected;
        Ok(record)
    }
}

/// Random sizes for the second family: each `F_i` has degree in
/// `1..=max_degree`, split into a random number of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm41Family {
    pub field: FieldSpec,
    pub nvars: Vec<usize>,
    pub max_degree: usize,
    pub coeff_range: i64,
}

impl Thm41Family {
    pub fn new(field: FieldSpec) -> Self {
        Thm41Family {
            field,
            nvars: vec![2, 3],
            max_degree: 7,
            coeff_range: INSTANCE_COEFF_RANGE,
        }
    }

    pub fn draw(&self, seed: u64) -> Result<Thm41Instance> {
        if self.nvars.is_empty() || self.max_degree == 0 {
            return Err(Error::InvalidArgument("empty family".into()));
        }
        let mut shape = stream_rng(child_seed(seed, 0), 0);
        let n = self.nvars[shape.gen_range(0..self.nvars.len())];
        let multiplicities: Vec<Vec<u32>> = (0..n)
            .map(|_| random_composition(shape.gen_range(1..=self.max_degree), &mut shape))
            .collect();
        build_thm41(self.field, &multiplicities, child_seed(seed, 1), self.coeff_range)
    }

    pub fn verify(&self, seed: u64, trials: usize) -> Result<Record> {
        let inst = self.draw(seed)?;
        verify_thm41(&inst, trials, child_seed(seed, 2))
    }
}

/// Uniform composition of `total` into a uniform number of positive parts.
fn random_composition<R: Rng + ?Sized>(total: usize, rng: &mut R) -> Vec<u32> {
    let parts = rng.gen_range(1..=total);
    // choose parts − 1 distinct cut points in 1..total
    let mut cuts: Vec<usize> = (1..total).collect();
    for k in 0..parts - 1 {
        let j = rng.gen_range(k..cuts.len());
        cuts.swap(k, j);
    }
    cuts.truncate(parts - 1);
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part as u32
        })
        .collect()
}

/// Random nonzero form of degree `d`, coefficients from `sampler`.
pub fn random_form<R: Rng + ?Sized>(n: usize, d: usize, sampler: &Sampler, rng: &mut R) -> Poly {
    loop {
        let terms = monomials_of_degree(n, d).into_iter().map(|m| (m, sampler.scalar(rng)));
        let f = Poly::from_terms(n, sampler.field(), terms).expect("one ring");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Shapes drawn by [`mixed_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MixedKind {
    /// `x_1^{e_1}, ..., x_n^{e_n}`.
    MonomialCi,
    /// `x_i^{d_i} l_i`.
    Thm31,
    /// Products of powers of random linear forms.
    Thm41,
    /// `n` random dense forms.
    RandomForms,
    /// A monomial complete intersection plus a random quadric; not a
    /// complete intersection in general.
    ExtraQuadric,
}

impl MixedKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MixedKind::MonomialCi => "monomial",
            MixedKind::Thm31 => "thm31",
            MixedKind::Thm41 => "thm41",
            MixedKind::RandomForms => "random-forms",
            MixedKind::ExtraQuadric => "extra-quadric",
        }
    }

    pub fn is_complete_intersection(self) -> bool {
        self != MixedKind::ExtraQuadric
    }
}

/// A random algebra in at most three variables with `dim A ≤ max_dim`.
/// With `ci_only` every draw is a complete intersection.
pub fn mixed_algebra(field: FieldSpec, seed: u64, max_dim: usize, ci_only: bool) -> Result<(MixedKind, ArtinianAlgebra)> {
    const KINDS: [MixedKind; 5] = [
        MixedKind::MonomialCi,
        MixedKind::Thm31,
        MixedKind::Thm41,
        MixedKind::RandomForms,
        MixedKind::ExtraQuadric,
    ];
    let kinds = if ci_only { &KINDS[..4] } else { &KINDS[..] };
    let mut rng = stream_rng(seed, 0);
    let small = Sampler::symmetric(field, 5);
    for attempt in 0..MAX_RETRIES {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let n = rng.gen_range(1..=3);
        let degrees: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        if degrees.iter().product::<usize>() > max_dim {
            continue;
        }
        let gens = match kind {
            MixedKind::MonomialCi => monomial_ci(field, &degrees),
            MixedKind::Thm31 => {
                if degrees.contains(&1) {
                    continue;
                }
                let (m, _) = random_thm31_matrix(field, n, 50, MinorGate::AllPrincipal, &mut rng)?;
                build_thm31(&Thm31Instance::new(degrees.iter().map(|e| e - 1).collect(), m)?)
            }
            MixedKind::Thm41 => {
                let multiplicities: Vec<Vec<u32>> =
                    degrees.iter().map(|&e| random_composition(e, &mut rng)).collect();
                build_thm41(field, &multiplicities, child_seed(seed, attempt as u64), INSTANCE_COEFF_RANGE)?.polys()
            }
            MixedKind::RandomForms => degrees.iter().map(|&e| random_form(n, e, &small, &mut rng)).collect(),
            MixedKind::ExtraQuadric => {
                let mut gens = monomial_ci(field, &degrees);
                gens.push(random_form(n, 2, &small, &mut rng));
                gens
            }
        };
        match ArtinianAlgebra::build(n, field, gens, None) {
            Ok(a) => return Ok((kind, a)),
            Err(Error::NotArtinian { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { retries: MAX_RETRIES })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Thm31,
    Thm41,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Thm31 => "thm31",
            Family::Thm41 => "thm41",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    /// Outside the hypotheses: not a complete intersection.
    Rejected,
    /// Some search found no witness; not evidence against anything.
    NotCertified,
    /// An exact statement failed.
    HardFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Rejected => "rejected",
            Status::NotCertified => "not_certified",
            Status::HardFail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmSummary {
    pub z: LinearForm,
    pub p: usize,
    pub q: usize,
    pub hilbert_functions: Vec<Vec<usize>>,
    pub all_have_slp: bool,
    pub telescopes: bool,
    pub last_csm_check: bool,
}

/// Whether `×L_{ij}` has full rank in every power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProfile {
    pub i: usize,
    pub j: usize,
    pub strong_lefschetz: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub family: Family,
    pub nvars: usize,
    pub field: FieldSpec,
    pub generators: Vec<Poly>,
    pub generator_degrees: Vec<usize>,
    pub gate: Option<MinorGate>,
    pub gate_passed: Option<bool>,
    pub ci_certificate: bool,
    pub hilbert_function: Vec<usize>,
    pub verdict: Option<Verdict>,
    pub sl_element: Option<LinearForm>,
    pub sl_trial: Option<usize>,
    pub jordan_type: Option<Partition>,
    pub dual_of_hilbert: Option<Partition>,
    pub csm: Option<CsmSummary>,
    pub factor_profiles: Vec<FactorProfile>,
    pub seed: u64,
    pub trials: usize,
    pub retries: usize,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
}

impl Record {
    fn new(family: Family, nvars: usize, field: FieldSpec, generators: Vec<Poly>, degrees: Vec<usize>) -> Self {
        Record {
            family,
            nvars,
            field,
            generators,
            generator_degrees: degrees,
            gate: None,
            gate_passed: None,
            ci_certificate: false,
            hilbert_function: Vec::new(),
            verdict: None,
            sl_element: None,
            sl_trial: None,
            jordan_type: None,
            dual_of_hilbert: None,
            csm: None,
            factor_profiles: Vec::new(),
            seed: 0,
            trials: 0,
            retries: 0,
            warnings: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn slp_certified(&self) -> bool {
        self.verdict == Some(Verdict::SlpCertified)
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::HardFail
        } else if !self.ci_certificate || self.gate_passed == Some(false) {
            Status::Rejected
        } else if !self.slp_certified() || self.csm.as_ref().is_some_and(|c| !c.all_have_slp) {
            Status::NotCertified
        } else {
            Status::Pass
        }
    }

    /// SLP search, exact cross-checks and the central simple modules of `(A, z)`.
    fn examine(&mut self, a: &Arc<ArtinianAlgebra>, z: &LinearForm, trials: usize, seed: u64) -> Result<()> {
        let sampler = Sampler::for_search(a.field());
        let h = a.hilbert_function();
        match find_sl_element(a.as_ref(), trials, child_seed(seed, 0), &sampler)? {
            Some(w) => {
                if w.report.criteria_agree == Some(false) {
                    self.failures
                        .push(format!("Jordan type and rank profile disagree for {}", w.element));
                }
                let peak = h.iter().copied().max().unwrap_or(0);
                if w.report.jordan_type.len() != peak {
                    self.failures.push(format!(
                        "Jordan type {:?} has {} parts, peak of h is {peak}",
                        w.report.jordan_type.parts(),
                        w.report.jordan_type.len()
                    ));
                }
                self.verdict = Some(w.report.verdict);
                self.jordan_type = Some(w.report.jordan_type.clone());
                self.dual_of_hilbert = Some(w.report.dual_of_hilbert.clone());
                self.sl_element = Some(w.element);
                self.sl_trial = Some(w.trial);
            }
            None => self
                .warnings
                .push(format!("no strong Lefschetz element among {trials} random forms")),
        }
        let chain = csm_chain(a, z)?;
        let slp = chain.module_slp(trials, child_seed(seed, 1), &sampler)?;
        let summary = CsmSummary {
            z: z.clone(),
            p: chain.p(),
            q: chain.q(),
            hilbert_functions: chain.module_hilbert_functions(),
            all_have_slp: slp.all_have_slp,
            telescopes: chain.telescopes(),
            last_csm_check: last_csm_check(&chain)?,
        };
        if !summary.telescopes {
            self.failures.push(format!("dimensions of the modules for {z} do not add up to dim A/zA"));
        }
        if !summary.last_csm_check {
            self.failures.push(format!("last module for {z} differs from C_q/(z)"));
        }
        if !summary.all_have_slp {
            self.warnings
                .push(format!("some central simple module of ({z}) had no element found among {trials} random forms"));
        }
        self.csm = Some(summary);
        Ok(())
    }
}

/// Gate, build, complete-intersection certificate, then SLP search with
/// certification and the central simple modules of `(A, x_1)`.
pub fn verify_thm31(inst: &Thm31Instance, gate: MinorGate, trials: usize, seed: u64) -> Result<Record> {
    let (n, field) = (inst.n(), inst.field());
    let mut record = Record::new(Family::Thm31, n, field, build_thm31(inst), inst.generator_degrees());
    record.seed = seed;
    record.trials = trials;
    record.gate = Some(gate);
    let gate_passed = n == 1 || ci_minors_check(inst.matrix(), gate)?;
    record.gate_passed = Some(gate_passed);
    let algebra = match ArtinianAlgebra::build(n, field, record.generators.clone(), None) {
        Ok(a) => Some(Arc::new(a)),
        Err(Error::NotArtinian { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(a) = &algebra {
        record.hilbert_function = a.hilbert_function();
        record.ci_certificate = ci_hilbert_certificate(a, &record.generator_degrees)?;
    }
    if gate_passed != record.ci_certificate {
        let msg = format!(
            "{} minor gate says {} but the Hilbert certificate says {}",
            gate.as_str(),
            gate_passed,
            record.ci_certificate
        );
        match gate {
            MinorGate::AllPrincipal => record.failures.push(msg),
            MinorGate::Leading => record.warnings.push(msg),
        }
    }
    match algebra {
        Some(a) if gate_passed && record.ci_certificate => {
            record.examine(&a, &LinearForm::variable(n, field, 0), trials, seed)?;
        }
        _ => {}
    }
    Ok(record)
}

/// Certificate, SLP search with certification, the central simple modules
/// of `(A, L_{11})`, and the rank profile of every `L_{ij}`. A non-Lefschetz
/// `L_{11}` is only a warning.
pub fn verify_thm41(inst: &Thm41Instance, trials: usize, seed: u64) -> Result<Record> {
    let (n, field) = (inst.n(), inst.field());
    let mut record = Record::new(Family::Thm41, n, field, inst.polys(), inst.degrees());
    record.seed = seed;
    record.trials = trials;
    record.retries = inst.retries();
    let built = match &inst.algebra {
        Some(a) => Ok(Arc::clone(a)),
        None => ArtinianAlgebra::build(n, field, record.generators.clone(), None).map(Arc::new),
    };
    let a = match built {
        Ok(a) => a,
        Err(Error::NotArtinian { .. }) => {
            record.warnings.push("coefficients are not generic: quotient is not Artinian".into());
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    record.hilbert_function = a.hilbert_function();
    record.ci_certificate = ci_hilbert_certificate(&a, &record.generator_degrees)?;
    if !record.ci_certificate {
        record.warnings.push("coefficients are not generic: not a complete intersection".into());
        return Ok(record);
    }
    let l11 = inst.forms()[0][0].clone();
    record.examine(&a, &l11, trials, seed)?;
    for (i, ls) in inst.forms().iter().enumerate() {
        for (j, l) in ls.iter().enumerate() {
            record.factor_profiles.push(FactorProfile {
                i,
                j,
                strong_lefschetz: full_rank_profile(a.as_ref(), l)?.is_strong_lefschetz(),
            });
        }
    }
    if !record.factor_profiles[0].strong_lefschetz {
        record.warnings.push(format!("L_11 = {l11} is not a strong Lefschetz element"));
    }
    Ok(record)
}
