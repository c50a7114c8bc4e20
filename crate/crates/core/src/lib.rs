//! Exact construction and certification of tridiagonal pairs and systems.
//!
//! The linear algebra is generic over an exact [`Field`]; the aliases below
//! fix the two instances the tool works with, the rationals over
//! arbitrary-precision integers and the prime fields GF(p).

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod polybasis;
pub mod report;
pub mod tensorspace;
pub mod tdcore;

pub use error::{Error, Result};
pub use exactla::{Field, FieldSpec, Fp, Matrix, Polynomial, PrimeField, RationalField, Scalar};

/// Arbitrary-precision rational number.
pub type Q = num_rational::BigRational;
/// The field of rationals over `BigInt`.
pub type Rationals = RationalField<num_bigint::BigInt>;
/// Matrices over the rationals.
pub type QMatrix = Matrix<Rationals>;
/// Matrices over GF(p).
pub type FpMatrix = Matrix<PrimeField>;
