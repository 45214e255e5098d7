//! Manifold models, differential forms and pre-symplectic structures.

pub mod de_rham;
pub mod forms;
pub mod model;

pub use de_rham::{
    de_rham, de_rham_with, presymplectic_check, symplectic_check, ClosureReport, DeRham, DeRhamOptions,
    NondegeneracyReport, PreSymplecticStructure,
};
pub use forms::{one_forms, Forms, OneFormModule};
pub use model::{product, truncation_pi0, ManifoldModel, ModelKind, Pi0};

use thiserror::Error;

use crate::superalgebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("{kind} model cannot contain {generator}")]
    KindMismatch { kind: ModelKind, generator: String },
    #[error("component ω_{component} should have {expected}, found {found}")]
    DegreeMismatch { component: usize, expected: String, found: String },
    #[error("differentials admit no non-negative homogeneity weights")]
    NotWeightHomogeneous,
    #[error("weight {weight} piece is infinite within the truncation")]
    Unbounded { weight: i64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
