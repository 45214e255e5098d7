//! Builders for standard models: shifted cotangent bundles, derived critical
//! loci, Chevalley–Eilenberg models and strict `(-2)`-shifted Poisson models.

pub mod ce;
pub mod cotangent;
pub mod lie;
pub mod strict;

pub use ce::{chevalley_eilenberg, classifying_model};
pub use cotangent::{derived_critical_locus, shifted_cotangent, SymplecticModel};
pub use lie::LieAlgebraData;
pub use strict::{strict_minus2, StrictMinus2Data};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::superalgebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid Lie algebra data: {0}")]
    BadLieData(String),
    #[error("action is not a homomorphism on the bracket [e{i},e{j}]")]
    NotAnAction { i: usize, j: usize },
    #[error("action field e{i} does not commute with the model's differentials")]
    NotEquivariant { i: usize },
    #[error("the base model must have only degree (0,0,=) or (0,0,≠) coordinates")]
    NotBaseModel,
    #[error("an odd-flagged function needs odd coordinates")]
    FlagMismatch,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("Q(φ,φ) = {0} is not locally constant")]
    MasterEquationFails(String),
    #[error("degenerate data: {0}")]
    DegenerateInnerProduct(String),
    #[error("connection is not compatible with Q on (e{a},e{b})")]
    IncompatibleConnection { a: usize, b: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
