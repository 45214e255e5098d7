pub mod graded_core;
pub mod poisson;
pub mod quantise;
pub mod constructions;
pub mod geometry;
pub mod superalgebra;
pub mod simplicial;
pub mod cli;
