//! Exact linear algebra: small integer matrices (Smith form, lattices) and
//! sparse/dense matrices over any [`Scalar`](crate::exactq::Scalar) field.

pub mod dense;
mod int;
mod span;
mod sparse;

pub use int::{IntMatrix, Smith};
pub use span::Span;
pub use sparse::{vec_add, vec_axpy, vec_scale, SparseMatrix, SparseVec};
