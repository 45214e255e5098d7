//! Polydifferential operators, the BV Laplacian, twisted de Rham quantisation,
//! right de Rham complexes and the quantum master equation.

pub mod bv;
pub mod polydiff;
pub mod right;

#[cfg(test)]
mod tests;

pub use bv::{bv_laplacian, dcrit_layout, twisted_de_rham, HbarMode, TwistedDeRham};
pub use polydiff::{self_dual_involution, HbarSeries, PolyDiffOperator};
pub use right::{
    qme_check, right_de_rham, right_de_rham_checked, QmeReport, QuantisationElement, RightConnectionData, RightDeRham,
};

use thiserror::Error;

use crate::superalgebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantiseError {
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("multi-index of order {found} exceeds the bound {bound}")]
    OrderExceeded { bound: u32, found: u32 },
    #[error("invalid multi-index {0}")]
    BadMultiIndex(String),
    #[error("operators live on different rings")]
    RingMismatch,
    #[error("this operation is only implemented on algebras without odd generators")]
    OddGenerators,
    #[error("argument is not homogeneous")]
    NotHomogeneous,
    #[error("not a derived critical locus: {0}")]
    NotDCrit(String),
    #[error("volume {0} is not a unit")]
    NonUnitVolume(String),
    #[error("expected a plain manifold of degree-zero coordinates")]
    NotBaseModel,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("connection is not flat: {0}")]
    ConnectionNotFlat(String),
    #[error("differential leaves the truncation at {0}")]
    Unbounded(String),
    #[error("filtration violated: {0}")]
    FiltrationViolation(String),
    #[error("the two evaluations of the master equation disagree: {0}")]
    InconsistentEvaluations(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
