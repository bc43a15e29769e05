//! Exact verification of the two seven-component counts for the
//! `G2 x SL(2)` pair: the equivariant Slodowy slice side and the linear
//! side `C^7 (x) C^2`.
//!
//! The algebraic core ([`linalg`], [`g2`]) is generic over any exact
//! [`Field`]; the concrete aliases below fix the two fields the verifiers use:
//! arbitrary precision rationals for characteristic-zero statements and
//! small prime fields for the brute-force orbit oracle.
//!
//! Modules, in dependency order:
//!
//! - [`scalar`]: rationals and prime fields.
//! - [`linalg`]: dense rank / kernel / solve.
//! - [`g2`]: the 14-dimensional algebra `V + sl3 + V^t`.
//! - [`roots`]: root lattice, Weyl group, positive systems.
//! - [`slice`]: slice-side lemmas and the relevant-orbit count.
//! - [`rep7`]: the 7-dimensional representation and the linear-side count.
//! - [`report`]: suite runner and report serialization.

pub mod g2;
pub mod linalg;
pub mod rep7;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod slice;

use thiserror::Error;

pub use scalar::{Field, Fp};

/// Arbitrary precision rational, the default scalar.
pub type Q = num_rational::BigRational;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

pub type Matrix = linalg::DenseMatrix<Q>;
pub type Element = g2::G2Element<Q>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("adjoint action of {0} is not nilpotent")]
    NonNilpotent(String),
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("point is not on the slice e + ker ad f")]
    NotOnSlice,
    #[error("representation constraints are inconsistent: {0}")]
    NoSolution(String),
    #[error("representation constraints leave a {0}-dimensional solution family")]
    AmbiguousSolution(usize),
    #[error("relevancy criteria disagree for Weyl element {0}")]
    InconsistentCriteria(String),
    #[error("bad prime {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
