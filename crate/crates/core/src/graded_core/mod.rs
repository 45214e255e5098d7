//! Exact graded linear algebra: degrees, Koszul signs, complexes and cohomology.

pub mod complex;
pub mod degree;
pub mod linalg;

pub use complex::{cohomology, cohomology_all, hat_tot, Bicomplex, CohomologyReport, Complex, DegreeCohomology, Materialised};
pub use degree::{koszul_sign, Flag, TriDegree};
pub use linalg::{q, qf, Matrix, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("d∘d is nonzero starting in degree {degree}")]
    DifferentialSquareNonzero { degree: i64 },
    #[error("horizontal and vertical differentials do not commute at ({cochain},{chain})")]
    DifferentialsDoNotCommute { cochain: i64, chain: i64 },
    #[error("cutoff {cutoff} exceeds the materialised range (bound {materialised})")]
    UnboundedAntidiagonal { cutoff: i64, materialised: i64 },
}
