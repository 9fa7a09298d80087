//! Exact dense linear algebra over a field and over the integers.

mod int_matrix;
mod matrix;
mod rational;
mod scalar;

pub use int_matrix::IntMatrix;
pub use matrix::Matrix;
pub use rational::{ParseRationalError, Rational};
pub use scalar::{is_prime, FieldSpec, Scalar};
