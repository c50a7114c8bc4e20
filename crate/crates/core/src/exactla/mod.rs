//! Exact field arithmetic and dense linear algebra.
//!
//! Everything here is generic over a [`Field`] context; the crate root fixes
//! the usual instances (`Rationals`, `PrimeField`).

mod closure;
mod eigen;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use closure::{algebra_closure, multiplicative_closure, vector_closure};
pub use eigen::{char_poly, char_poly_by_minors, eigen_data, EigenData, EigenOutcome};
pub use field::{Field, FieldSpec, Fp, IntegerBase, PrimeField, RationalField, Scalar, MAX_PRIME};
pub use matrix::{solve_combination, span_rank, Matrix, Rref};
pub use poly::Polynomial;
pub use subspace::SubspaceBasis;
