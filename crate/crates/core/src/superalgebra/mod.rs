//! Free graded-commutative superalgebras with derivations and differentials.

pub mod basis;
pub mod cdga;
pub mod element;
pub mod ring;

pub use basis::{
    coordinates, enumerate_monomials, from_coordinates, infer_weights, model_cohomology, monomial_complex, monomials_of_weight,
    operator_matrix, weight_slice, Truncation, DEFAULT_DEGREE_CAP,
};
pub use cdga::{make_cdga, FreeSuperCDGA};
pub use element::{apply_derivation, multiply, AlgebraElement, Derivation};
pub use ring::{Generator, Mono, Poly, Ring};

use thiserror::Error;

use crate::graded_core::TriDegree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{which} does not square to zero on generator {generator}")]
    SquareNotZero { generator: String, which: &'static str },
    #[error("value on {generator} has degree {found:?}, expected {expected}")]
    DegreeMismatch { generator: String, expected: TriDegree, found: Option<TriDegree> },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {0} declared twice")]
    DuplicateGenerator(String),
    #[error("generator {0} has a negative degree")]
    NegativeGeneratorDegree(String),
    #[error("differentials admit no non-negative homogeneity weights")]
    NotWeightHomogeneous,
    #[error("weight pieces are infinite: even generator {0} has weight zero")]
    Unbounded(String),
    #[error("image monomial {0} lies outside the chosen basis")]
    BasisOverflow(String),
    #[error("complex: {0}")]
    Complex(String),
}

#[cfg(test)]
mod tests;
