//! Partitions, Jordan types of nilpotent multiplication maps, and the weak /
//! strong Lefschetz deciders.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::graded::{ArtinianAlgebra, GradedSpace};
use crate::modp::ModMatrix;
use crate::scalar::{FieldSpec, Matrix};
use crate::poly::{LinearForm, Poly};
use crate::sampling::{stream_rng, Sampler};

/// A partition `n_1 ⊕ n_2 ⊕ ... ⊕ n_r`, parts sorted descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros; block order is irrelevant.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `r`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dual(&self) -> Partition {
        dual_partition(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "⊕")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

/// Coefficients of `Σ_i (1 + λ + ... + λ^{n_i − 1})`: the `k`-th is the
/// number of parts larger than `k`.
pub fn dual_partition(p: &Partition) -> Partition {
    let top = p.parts.first().copied().unwrap_or(0);
    let mut coeffs = vec![0usize; top];
    for &n in &p.parts {
        for c in coeffs.iter_mut().take(n) {
            *c += 1;
        }
    }
    Partition::new(coeffs)
}

/// The total order on partitions of one integer: fewer parts is larger;
/// with equally many parts, compare the sorted parts lexicographically.
pub fn compare_partitions(p: &Partition, q: &Partition) -> Result<Ordering> {
    if p.weight() != q.weight() {
        return Err(Error::WeightMismatch {
            left: p.weight(),
            right: q.weight(),
        });
    }
    Ok(q.len().cmp(&p.len()).then_with(|| p.parts.cmp(&q.parts)))
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(h: &[usize]) -> bool {
    let mut descending = false;
    for w in h.windows(2) {
        match w[0].cmp(&w[1]) {
            Ordering::Greater => descending = true,
            Ordering::Less if descending => return false,
            _ => {}
        }
    }
    true
}

/// The Hilbert function read as a partition `h_0 ⊕ ... ⊕ h_c`.
pub fn hilbert_partition(h: &[usize]) -> Partition {
    Partition::new(h.to_vec())
}

/// Ranks of `×y^j : V_i → V_{i+jk}` (`k = deg y`) for every source degree
/// `i` and every `j ≥ 1` with `i + jk` in range: `ranks[i][j − 1]`.
///
/// With [`Route::Products`] the maps are products of single-step matrices;
/// with [`Route::Expanded`] each is built from the expanded power `y^j`. Both
/// are first taken modulo the shadow prime: a modular rank is final over
/// `F_p`, and over `Q` when it already equals the smaller dimension. Only
/// the remaining maps are recomputed exactly.
fn power_ranks<V: GradedSpace + ?Sized>(v: &V, y: &Poly, k: usize, route: Route) -> Result<Vec<Vec<usize>>> {
    let h = v.hilbert_function();
    let top = h.len();
    let exact_modulus = matches!(v.field(), FieldSpec::PrimeField(_));
    let longest = top.saturating_sub(1) / k;
    let powers: Vec<Poly> = match route {
        Route::Products => Vec::new(),
        Route::Expanded => {
            let mut out: Vec<Poly> = Vec::with_capacity(longest);
            for j in 0..longest {
                let next = if j == 0 { y.clone() } else { out[j - 1].multiply(y)? };
                out.push(next);
            }
            out
        }
    };
    let mut ranks: Vec<Vec<Option<usize>>> = (0..top)
        .map(|i| vec![None; (top - 1 - i) / k])
        .collect();
    let steps_mod: Option<Vec<ModMatrix>> = match route {
        Route::Products => (0..top).map(|i| v.action_matrix_mod(y, i)).collect(),
        Route::Expanded => None,
    };
    for (i, row) in ranks.iter_mut().enumerate() {
        let mut chain: Option<ModMatrix> = None;
        for (j, slot) in row.iter_mut().enumerate() {
            let src = i + j * k;
            let map = match (&steps_mod, route) {
                (Some(steps), Route::Products) => Some(match chain.take() {
                    None => steps[src].clone(),
                    Some(m) => steps[src].mul(&m),
                }),
                (_, Route::Expanded) => v.action_matrix_mod(&powers[j], i),
                _ => None,
            };
            let Some(map) = map else { continue };
            let r = map.rank();
            if exact_modulus || r == h[i].min(h[src + k]) {
                *slot = Some(r);
            }
            chain = Some(map);
        }
    }

    let mut steps: Vec<Option<Matrix>> = vec![None; top];
    let mut exact_step = |i: usize| -> Result<Matrix> {
        if steps[i].is_none() {
            steps[i] = Some(v.action_matrix(y, i)?);
        }
        Ok(steps[i].clone().expect("just filled"))
    };
    let mut out = Vec::with_capacity(top);
    for (i, row) in ranks.into_iter().enumerate() {
        if row.iter().all(Option::is_some) {
            out.push(row.into_iter().flatten().collect());
            continue;
        }
        let mut exact = Vec::with_capacity(row.len());
        let mut chain: Option<Matrix> = None;
        for (j, known) in row.into_iter().enumerate() {
            let src = i + j * k;
            match route {
                Route::Products => {
                    let next = match chain.take() {
                        None => exact_step(src)?,
                        Some(m) => exact_step(src)?.mul(&m)?,
                    };
                    exact.push(known.unwrap_or_else(|| next.rank()));
                    chain = Some(next);
                }
                Route::Expanded => exact.push(match known {
                    Some(r) => r,
                    None => v.action_rank(&powers[j], i)?,
                }),
            }
        }
        out.push(exact);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Products,
    Expanded,
}

/// Jordan type of `×y` on `v` from the rank sequence `r_j = rank(×y^j)`:
/// the number of blocks of size exactly `j` is `r_{j−1} − 2 r_j + r_{j+1}`.
/// The sources of `×y^j` map to distinct target degrees, so the ranks add.
pub fn jordan_type<V: GradedSpace + ?Sized>(v: &V, y: &Poly) -> Result<Partition> {
    if y.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = y.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if k == 0 {
        return Err(Error::ZeroDegreeElement);
    }
    let table = power_ranks(v, y, k, Route::Products)?;
    let mut ranks = vec![v.total_dim()];
    for j in 0.. {
        let r: usize = table.iter().filter_map(|row| row.get(j)).sum();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    ranks.push(0);
    Ok(partition_from_ranks(&ranks))
}

/// `ranks[k] = rank(N^k)` with `ranks[0] = dim`, ending in a zero.
fn partition_from_ranks(ranks: &[usize]) -> Partition {
    let mut parts = Vec::new();
    for size in 1..ranks.len() {
        let next = ranks.get(size + 1).copied().unwrap_or(0);
        let count = ranks[size - 1] + next - 2 * ranks[size];
        parts.extend(std::iter::repeat_n(size, count));
    }
    Partition::new(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Jordan type equals the dual of the (unimodal) Hilbert function.
    SlpCertified,
    /// Every `×z^d : V_i → V_{i+d}` has full rank.
    SlpHoldsForElement,
    /// Only the `d = 1` maps are all of full rank.
    WlpOnly,
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SlpCertified => "SLP_certified",
            Verdict::SlpHoldsForElement => "SLP_holds_for_element",
            Verdict::WlpOnly => "WLP_only",
            Verdict::Fails => "Fails",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rank of `×z^power : V_degree → V_{degree+power}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRecord {
    pub power: usize,
    pub degree: usize,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub full_rank: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    pub element: LinearForm,
    pub hilbert_function: Vec<usize>,
    pub records: Vec<RankRecord>,
    pub verdict: Verdict,
    pub jordan_type: Partition,
    pub dual_of_hilbert: Partition,
    pub unimodal: bool,
    /// Whether the Jordan-type criterion and the rank profile agree
    /// (only set by [`certify_sl_element`]).
    pub criteria_agree: Option<bool>,
}

impl LefschetzReport {
    pub fn all_full_rank(&self) -> bool {
        self.records.iter().all(|r| r.full_rank)
    }

    /// Certified, or every power map of full rank.
    pub fn is_strong_lefschetz(&self) -> bool {
        matches!(self.verdict, Verdict::SlpCertified | Verdict::SlpHoldsForElement)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RankRecord> {
        self.records.iter().filter(|r| !r.full_rank)
    }
}

fn check_form<V: GradedSpace + ?Sized>(v: &V, z: &LinearForm) -> Result<()> {
    if z.nvars() != v.nvars() {
        return Err(Error::VariableCountMismatch {
            left: v.nvars(),
            right: z.nvars(),
        });
    }
    if z.field() != v.field() {
        return Err(Error::MixedField);
    }
    Ok(())
}

/// Ranks of `×z^d : V_i → V_{i+d}` for all `1 ≤ d ≤ b−a`, `a ≤ i ≤ b−d`,
/// where `[a, b]` is the effective degree range of `v`. The maps come from
/// the expanded powers `z^d`, independently of [`jordan_type`].
pub fn full_rank_profile<V: GradedSpace + ?Sized>(v: &V, z: &LinearForm) -> Result<LefschetzReport> {
    check_form(v, z)?;
    let h = v.hilbert_function();
    let dual_of_hilbert = dual_partition(&hilbert_partition(&h));
    let Some((a, b)) = v.effective_range() else {
        return Ok(LefschetzReport {
            element: z.clone(),
            hilbert_function: h,
            records: Vec::new(),
            verdict: Verdict::SlpHoldsForElement,
            jordan_type: Partition::empty(),
            dual_of_hilbert,
            unimodal: true,
            criteria_agree: None,
        });
    };
    let table = power_ranks(v, &z.to_poly(), 1, Route::Expanded)?;
    let mut records = Vec::new();
    let mut ranks = vec![h.iter().sum::<usize>()];
    for d in 1..=b - a {
        let mut total = 0;
        for i in a..=b - d {
            let rank = table[i][d - 1];
            let (source_dim, target_dim) = (h[i], h[i + d]);
            total += rank;
            records.push(RankRecord {
                power: d,
                degree: i,
                rank,
                source_dim,
                target_dim,
                full_rank: rank == source_dim.min(target_dim),
            });
        }
        ranks.push(total);
    }
    ranks.push(0);
    let verdict = if records.iter().all(|r| r.full_rank) {
        Verdict::SlpHoldsForElement
    } else if records.iter().filter(|r| r.power == 1).all(|r| r.full_rank) {
        Verdict::WlpOnly
    } else {
        Verdict::Fails
    };
    Ok(LefschetzReport {
        element: z.clone(),
        unimodal: is_unimodal(&h[a..=b]),
        hilbert_function: h,
        records,
        verdict,
        jordan_type: partition_from_ranks(&ranks),
        dual_of_hilbert,
        criteria_agree: None,
    })
}

/// Decides whether `z` is a strong Lefschetz element of `A` by comparing its
/// Jordan type with the dual of the Hilbert function, and cross-checks the
/// answer against the rank profile.
pub fn certify_sl_element(a: &ArtinianAlgebra, z: &LinearForm) -> Result<LefschetzReport> {
    let mut report = full_rank_profile(a, z)?;
    let jordan = jordan_type(a, &z.to_poly())?;
    let unimodal = is_unimodal(&report.hilbert_function);
    let certified = unimodal && jordan == report.dual_of_hilbert;
    report.criteria_agree = Some(certified == report.all_full_rank());
    report.unimodal = unimodal;
    report.jordan_type = jordan;
    if certified {
        report.verdict = Verdict::SlpCertified;
    }
    Ok(report)
}

/// Whether `dual(h) ≽ jordan_type(A, y)`, which must hold for every
/// homogeneous `y` of positive degree when `h` is unimodal.
pub fn jordan_bound_holds(a: &ArtinianAlgebra, y: &Poly) -> Result<bool> {
    let jordan = jordan_type(a, y)?;
    let dual = dual_partition(&hilbert_partition(&a.hilbert_function()));
    Ok(compare_partitions(&dual, &jordan)? != Ordering::Less)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlWitness {
    pub element: LinearForm,
    pub report: LefschetzReport,
    /// Index of the successful trial.
    pub trial: usize,
}

/// Samples `trials` random linear forms (trial `t` uses stream `t` of
/// `seed`) and returns the first strong Lefschetz element found. For the
/// full algebra the element must also be certified by its Jordan type.
///
/// `None` only means no element was found among the samples.
pub fn find_sl_element<V: GradedSpace + ?Sized>(
    v: &V,
    trials: usize,
    seed: u64,
    sampler: &Sampler,
) -> Result<Option<SlWitness>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if sampler.field() != v.field() {
        return Err(Error::MixedField);
    }
    for t in 0..trials {
        let z = sampler.linear_form(v.nvars(), &mut stream_rng(seed, t as u64));
        let report = match v.as_algebra() {
            Some(a) => certify_sl_element(a, &z)?,
            None => full_rank_profile(v, &z)?,
        };
        let accepted = match v.as_algebra() {
            Some(_) => report.verdict == Verdict::SlpCertified && report.all_full_rank(),
            None => report.all_full_rank(),
        };
        if accepted {
            return Ok(Some(SlWitness {
                element: z,
                report,
                trial: t,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{quotient_module, GradedSubspace};
    use crate::scalar::FieldSpec;
    use alloc::sync::Arc;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, Q, i)
    }

    fn squares(n: usize) -> ArtinianAlgebra {
        ArtinianAlgebra::build(n, Q, (0..n).map(|i| var(n, i).pow(2)).collect(), None).unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(Q, c).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p(&[3])), p(&[1, 1, 1]));
        assert_eq!(dual_partition(&p(&[4, 2, 2])), p(&[3, 3, 1, 1]));
        assert_eq!(dual_partition(&p(&[3, 3, 1, 1])), p(&[4, 2, 2]));
        assert_eq!(dual_partition(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(compare_partitions(&p(&[4, 2, 2]), &p(&[3, 3, 1, 1])), Ok(Ordering::Greater));
        assert_eq!(compare_partitions(&p(&[4, 2, 2]), &p(&[4, 2, 2])), Ok(Ordering::Equal));
        assert_eq!(compare_partitions(&p(&[3, 1]), &p(&[2, 2])), Ok(Ordering::Greater));
        assert_eq!(compare_partitions(&p(&[2, 2]), &p(&[3, 1])), Ok(Ordering::Less));
        assert_eq!(
            compare_partitions(&p(&[3]), &p(&[2])),
            Err(Error::WeightMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(!is_unimodal(&[1, 2, 1, 2]));
        assert!(is_unimodal(&[1]));
        assert!(is_unimodal(&[0, 1, 0]));
        assert!(!is_unimodal(&[1, 0, 1]));
    }

    #[test]
    fn jordan_examples() {
        let a = ArtinianAlgebra::build(1, Q, vec![var(1, 0).pow(3)], None).unwrap();
        assert_eq!(jordan_type(&a, &var(1, 0)).unwrap(), p(&[3]));
        assert_eq!(jordan_type(&squares(2), &var(2, 0)).unwrap(), p(&[2, 2]));
        let z = lf(&[1, 1, 1]).to_poly();
        assert_eq!(jordan_type(&squares(3), &z).unwrap(), p(&[4, 2, 2]));
        assert_eq!(
            jordan_type(&squares(2), &Poly::one(2, Q)).unwrap_err(),
            Error::ZeroDegreeElement
        );
    }

    #[test]
    fn full_rank_profile_examples() {
        let a = squares(2);
        let r = full_rank_profile(&a, &lf(&[1, 1])).unwrap();
        assert_eq!(r.records.len(), 3);
        assert!(r.all_full_rank());
        assert_eq!(r.verdict, Verdict::SlpHoldsForElement);

        let r = full_rank_profile(&a, &lf(&[1, 0])).unwrap();
        assert_eq!(r.verdict, Verdict::WlpOnly);
        let fails: Vec<_> = r.failures().collect();
        assert_eq!(fails.len(), 1);
        assert_eq!((fails[0].power, fails[0].degree, fails[0].rank), (2, 0, 0));
    }

    #[test]
    fn single_degree_module_is_vacuously_slp() {
        let a = Arc::new(squares(2));
        // A / m: one-dimensional in degree 0
        let m = crate::graded::principal_ideal(&a, &var(2, 0))
            .unwrap()
            .sum(&crate::graded::principal_ideal(&a, &var(2, 1)).unwrap())
            .unwrap();
        let u = quotient_module(&GradedSubspace::whole(&a), &m).unwrap();
        let r = full_rank_profile(&u, &lf(&[1, 0])).unwrap();
        assert!(r.records.is_empty());
        assert!(r.is_strong_lefschetz());
    }

    #[test]
    fn certify_examples() {
        let r = certify_sl_element(&squares(3), &lf(&[1, 1, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::SlpCertified);
        assert_eq!(r.jordan_type, p(&[4, 2, 2]));
        assert_eq!(r.dual_of_hilbert, p(&[4, 2, 2]));
        assert_eq!(r.criteria_agree, Some(true));

        let r = certify_sl_element(&squares(2), &lf(&[1, 0])).unwrap();
        assert_ne!(r.verdict, Verdict::SlpCertified);
        assert_eq!(r.jordan_type, p(&[2, 2]));
        assert_eq!(r.dual_of_hilbert, p(&[3, 1]));
        assert_eq!(r.criteria_agree, Some(true));

        for m in 1..6 {
            let a = ArtinianAlgebra::build(1, Q, vec![var(1, 0).pow(m)], None).unwrap();
            let r = certify_sl_element(&a, &lf(&[1])).unwrap();
            assert_eq!(r.verdict, Verdict::SlpCertified);
            assert_eq!(r.jordan_type, p(&[m as usize]));
        }
    }

    #[test]
    fn search_finds_element_on_squares() {
        let a = squares(2);
        for seed in 0..5 {
            let w = find_sl_element(&a, 3, seed, &Sampler::for_search(Q)).unwrap().unwrap();
            assert_eq!(w.report.verdict, Verdict::SlpCertified);
        }
    }

    #[test]
    fn search_on_zero_module_is_vacuous() {
        let a = Arc::new(squares(2));
        let whole = GradedSubspace::whole(&a);
        let u = quotient_module(&whole, &whole).unwrap();
        let w = find_sl_element(&u, 1, 0, &Sampler::for_search(Q)).unwrap().unwrap();
        assert!(w.report.records.is_empty());
        assert_eq!(w.trial, 0);
    }
}
