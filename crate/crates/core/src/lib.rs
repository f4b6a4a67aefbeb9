//! Exact determinant factorizations for walking-cat graphs glued along
//! corridors, with hyperplane arrangements as the main source of examples.
//!
//! All arithmetic is exact: entries are multivariate polynomials with
//! rational coefficients and equality is equality of canonical forms.

pub mod algebra;
pub mod arrangement;
pub mod corridor;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod random;

pub use algebra::{
    determinant, determinant_with, poly, DetAlgorithm, Monomial, Polynomial, Rational, SizeCaps,
    SquareMatrix,
};
pub use corridor::{
    build_mq, corridor_partition, glue_system, multi_corridor_partition, Block, BlockGlueSpec,
    CorridorPartition, CorridorSet,
};
pub use error::{CorridorCondition, Error, Result};
pub use factorization::{FactorizationReport, Factor};
pub use graph::{
    extended_kernel, minimal_sequences, validate_axioms, ExtendedKernel, LabeledDigraph, Mode,
    ValidationReport,
};
