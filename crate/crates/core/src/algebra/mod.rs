//! Exact rational and polynomial arithmetic plus determinant algorithms.

pub mod det;
pub mod matrix;
pub mod monomial;
pub mod polynomial;
pub mod rational;

pub use det::{
    det_bareiss, det_division_free, det_laplace, determinant, determinant_with, DetAlgorithm,
    SizeCaps,
};
pub use matrix::SquareMatrix;
pub use monomial::Monomial;
pub use polynomial::{poly, Polynomial};
pub use rational::{parse_rational, Rational};
