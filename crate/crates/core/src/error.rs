use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("scalars from different fields were mixed")]
    MixedField,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not an admissible prime modulus")]
    InvalidPrime(u64),
    #[error("operands live in polynomial rings with {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is homogeneous of degree {actual}, expected {expected}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("the zero polynomial has no degree here")]
    ZeroPolynomial,
    #[error("linear form has all coefficients zero")]
    ZeroLinearForm,
    #[error("generator has degree zero or is zero")]
    ZeroGenerator,
    #[error("multiplication by an element of degree 0 is not nilpotent")]
    ZeroDegreeElement,
    #[error("degree cap {cap} is below the largest generator degree {max_degree}")]
    DegreeCapTooSmall { cap: usize, max_degree: usize },
    #[error("quotient is nonzero in degree {degree_cap}: ideal is not Artinian (or the cap is too small)")]
    NotArtinian { degree_cap: usize },
    #[error("subspace is not contained in the numerator in degree {degree}")]
    ContainmentViolated { degree: usize },
    #[error("graded subspaces belong to different algebras")]
    AmbientMismatch,
    #[error("partitions have different weights {left} and {right}")]
    WeightMismatch { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("Hilbert function {0} does not certify a Gorenstein algebra")]
    NotGorensteinCertificate(String),
    #[error("expected {expected} generators in {expected} variables, got {actual}")]
    GeneratorCountMismatch { expected: usize, actual: usize },
    #[error("instance shape violated: {0}")]
    ShapeViolation(String),
    #[error("no complete intersection drawn after {retries} retries")]
    RetriesExhausted { retries: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
