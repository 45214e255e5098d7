//! Cosimplicial algebras, conormalization, the `D*` functor, nerves of nilpotent
//! group actions and 2-shifted descent along a nerve.

mod cosimplicial;
mod descent;
mod dstar;
mod nerve;

#[cfg(test)]
mod tests;

pub use cosimplicial::{conormalize, CosimplicialAlgebra};
pub use descent::{descent_2shifted, descent_2shifted_with, DescentReport};
pub use dstar::{dstar, dstar_normal_form};
pub use nerve::{adjoint_matrix, bch, lower_central_dims, nerve, NerveData, DEFAULT_BCH_DEGREE, DEFAULT_LEVELS};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::graded_core::GradedError;
use crate::poisson::PoissonError;
use crate::superalgebra::AlgebraError;

#[derive(Debug, Error)]
pub enum SimplicialError {
    #[error("cosimplicial identity fails: {0}")]
    CosimplicialIdentityViolation(String),
    #[error("{0} is not nilpotent within the BCH truncation")]
    NotNilpotent(String),
    #[error("level {0} is not available")]
    MissingLevel(usize),
    #[error("not of nerve type: {0}")]
    NotNerveType(String),
    #[error("truncation by polynomial degree is not preserved: {0}")]
    TruncationNotPreserved(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

pub type Result<T> = std::result::Result<T, SimplicialError>;
