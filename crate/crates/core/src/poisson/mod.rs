//! Shifted polyvectors, the Schouten bracket and shifted Poisson structures.

pub mod compat;
pub mod lie;
pub mod mc;
pub mod polyvector;


pub use compat::{
    mu_compat, poisson_to_symplectic, poisson_to_symplectic_with, symplectic_to_poisson, symplectic_to_poisson_with,
};
pub use lie::{casimir_2shifted, casimir_2shifted_with, quasi_lie_bialgebra_check, QuasiLie};
pub use mc::{check_structure_degree, gauge_apply, mc_check, nondegenerate, sigma, GaugeOrder, McReport, PoissonStructure};
pub use polyvector::{momentum_degree, momentum_name, schouten, PolyAlgebra, Polyvector, DEFAULT_CUTOFF};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::geometry::GeometryError;
use crate::superalgebra::AlgebraError;

#[derive(Debug, Error)]
pub enum PoissonError {
    #[error("polyvector has shift {found}, expected {expected}")]
    ShiftMismatch { expected: i64, found: i64 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("linear system has no unique solution: {0}")]
    SingularSystem(String),
    #[error("obstruction in weight {0} does not vanish")]
    ObstructionNonzero(usize),
    #[error("gauge series leaves the truncation at order {0}")]
    TruncationExceeded(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
