//! Sparse multivariate polynomials, linear forms and generators kept as
//! products of powers of linear forms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Exponent vector of a monomial in `n` variables.
///
/// Ordered graded-lexicographically with `x1 > x2 > ... > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self * x_i`
    pub fn times_variable(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_variable(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables, in descending grlex order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn fill(n: usize, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if n == 1 {
            prefix.push(d as u32);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u32);
            fill(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::new();
    fill(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables, `C(n+d-1, d)`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (n as u128 - 1 + k) / k;
    }
    acc as usize
}

/// Ordered monomial basis of one degree with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let monomials = monomials_of_degree(n, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, field: FieldSpec) -> Self {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, field: FieldSpec) -> Self {
        Poly::constant(nvars, field.one())
    }

    pub fn variable(nvars: usize, field: FieldSpec, i: usize) -> Self {
        Poly::term(Monomial::variable(nvars, i), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.nvars(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(Error::MixedField);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// True for zero and for polynomials whose terms share one degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::MixedField);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.nvars, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same ring");
            }
        }
        acc
    }

    /// Coordinates against `monomials_of_degree(n, d)`.
    pub fn coefficient_vector(&self, d: usize) -> Result<Vec<Scalar>> {
        if let Some(e) = self.homogeneous_degree() {
            if e != d {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    actual: e,
                });
            }
        } else if !self.is_zero() {
            return Err(Error::NotHomogeneous);
        }
        Ok(monomials_of_degree(self.nvars, d)
            .iter()
            .map(|m| self.coefficient(m))
            .collect())
    }

    pub fn from_coefficient_vector(nvars: usize, field: FieldSpec, d: usize, v: &[Scalar]) -> Result<Poly> {
        let basis = monomials_of_degree(nvars, d);
        if basis.len() != v.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} coordinates for {} monomials",
                v.len(),
                basis.len()
            )));
        }
        Poly::from_terms(nvars, field, basis.into_iter().zip(v.iter().cloned()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = matches!(c, Scalar::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()));
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

/// A nonzero linear form `c_1 x_1 + ... + c_n x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::ZeroLinearForm);
        };
        let field = first.field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::MixedField);
        }
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn variable(nvars: usize, field: FieldSpec, i: usize) -> Self {
        let mut c = vec![field.zero(); nvars];
        c[i] = field.one();
        LinearForm { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs[0].field()
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.nvars();
        Poly::from_terms(
            n,
            self.field(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::variable(n, i), c.clone())),
        )
        .expect("coefficients share a field")
    }

    /// Reads a linear form back from a degree-1 polynomial.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        match p.homogeneous_degree() {
            Some(1) => {}
            Some(d) => {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    actual: d,
                })
            }
            None if p.is_zero() => return Err(Error::ZeroLinearForm),
            None => return Err(Error::NotHomogeneous),
        }
        let n = p.nvars();
        LinearForm::new(
            (0..n)
                .map(|i| p.coefficient(&Monomial::variable(n, i)))
                .collect(),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// `F = L_1^{d_1} * ... * L_m^{d_m}`, kept unexpanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredGenerator {
    factors: Vec<(LinearForm, u32)>,
}

impl FactoredGenerator {
    pub fn new(factors: Vec<(LinearForm, u32)>) -> Result<Self> {
        let Some((first, _)) = factors.first() else {
            return Err(Error::ZeroGenerator);
        };
        let (n, field) = (first.nvars(), first.field());
        for (l, mult) in &factors {
            if *mult == 0 {
                return Err(Error::ZeroGenerator);
            }
            if l.nvars() != n {
                return Err(Error::VariableCountMismatch {
                    left: n,
                    right: l.nvars(),
                });
            }
            if l.field() != field {
                return Err(Error::MixedField);
            }
        }
        Ok(FactoredGenerator { factors })
    }

    pub fn factors(&self) -> &[(LinearForm, u32)] {
        &self.factors
    }

    pub fn nvars(&self) -> usize {
        self.factors[0].0.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.factors[0].0.field()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(self.nvars(), self.field()), |acc, (l, m)| {
                acc.multiply(&l.to_poly().pow(*m)).expect("same ring")
            })
    }
}

impl fmt::Display for FactoredGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, m)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", l)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        Ok(())
    }
}
