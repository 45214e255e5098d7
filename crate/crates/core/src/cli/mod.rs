//! The model description language, command dispatch and report emission.

mod dsl;
mod run;

#[cfg(test)]
mod tests;

pub use dsl::{builtin_lie, parse_model, print_model, Contexts, Expr, GenDecl, LieDecl, LieTable, ModelSpec, Pos};
pub use run::{contexts, normal_form, run, Command, Format, Options, Report, Verdict};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::geometry::GeometryError;
use crate::graded_core::GradedError;
use crate::poisson::PoissonError;
use crate::quantise::QuantiseError;
use crate::simplicial::SimplicialError;
use crate::superalgebra::AlgebraError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown generator {name} at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Quantise(#[from] QuantiseError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

impl CliError {
    /// 2 for input errors, and one status from 3 upwards per module.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::UnknownGenerator { .. } | CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Graded(_) => 3,
            CliError::Algebra(_) => 4,
            CliError::Geometry(_) => 5,
            CliError::Construction(_) => 6,
            CliError::Poisson(_) => 7,
            CliError::Quantise(_) => 8,
            CliError::Simplicial(_) => 9,
        }
    }
}
