//! Exact computations in standard graded Artinian algebras `K[x_1..x_n]/I`.
//!
//! The crate builds the quotient degree by degree with exact linear algebra
//! (no Gröbner bases), computes Hilbert functions, colon ideals and graded
//! subquotients, and decides weak and strong Lefschetz properties through
//! rank profiles, Jordan types and central simple modules.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the companion `lefschetz` crate.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod csm;
pub mod error;
pub mod graded;
pub mod harness;
pub mod lefschetz;
pub mod modp;
mod multimod;
pub mod poly;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use graded::{ArtinianAlgebra, GradedModule, GradedSpace, GradedSubspace, GradedVector};
pub use lefschetz::{LefschetzReport, Partition, Verdict};
pub use poly::{FactoredGenerator, LinearForm, Monomial, Poly};
pub use scalar::{FieldSpec, Matrix, RowSpace, Scalar};
