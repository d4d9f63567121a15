//! Exact computations over path algebras of finite quivers.
//!
//! The crate provides, over the rationals or a prime field:
//! quiver combinatorics and incidence matrices, exact integer linear
//! algebra (Smith normal form, cokernels), arithmetic in the path
//! algebra together with its degree filtration, a filtered-free-module
//! engine (dependence solving, canonical weak bases, membership,
//! projective splitting of finitely presented modules), finite
//! dimensional quiver representations (composition series, simples,
//! induced length), torsion-module extraction from augmentation
//! invertible presentation matrices, and assembled K-theory reports
//! for the Leavitt and regular algebras of a quiver.

pub mod abelian;
pub mod algebra;
pub mod blanchfield;
pub mod json;
pub mod ktheory;
pub mod linalg;
pub mod polyfactor;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod weak;

pub use scalar::FieldSpec;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("quiver mismatch")]
    QuiverMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vertex decomposition error: {0}")]
    VertexDecomposition(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("vertex {0} is a sink")]
    SinkVertex(String),
    #[error("representation is not simple")]
    NotSimple,
    #[error("operation requires a finite field")]
    InfiniteFieldUnsupported,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u32),
    #[error("matrix is not augmentation-invertible")]
    NotSigma,
    #[error("module is not Blanchfield: {0}")]
    NotBlanchfield(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
