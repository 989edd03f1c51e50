//! Dense exact linear algebra: matrices, canonical subspaces and the
//! subspace lattice.
//!
//! Everything here is generic over [`Field`]. The algorithms make rank
//! decisions by testing entries against zero, so the scalar type must be an
//! exact field (rationals, either arbitrary precision or machine-word
//! `Ratio<i64>` for small inputs).

mod matrix;
mod sparse;
mod subspace;

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{NumAssignRef, NumRef};

pub use matrix::Matrix;
pub use sparse::{SpanBuilder, SparseVec};
pub use subspace::Subspace;

/// Scalars the linear algebra layer can work over.
pub trait Field: Clone + Debug + PartialEq + NumRef + NumAssignRef + Neg<Output = Self> + Send + Sync {}

impl<T> Field for T where T: Clone + Debug + PartialEq + NumRef + NumAssignRef + Neg<Output = T> + Send + Sync {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("matrix is singular")]
    Singular,
}

/// Reduces the rows of `m` to a canonical basis of its row space.
pub fn reduce<T: Field>(m: &Matrix<T>) -> (Subspace<T>, usize) {
    let s = Subspace::row_space(m);
    let r = s.dim();
    (s, r)
}

/// The null space `{v : m v = 0}`.
pub fn kernel<T: Field>(m: &Matrix<T>) -> Subspace<T> {
    Subspace::kernel_of(m)
}

/// The column space of `m`.
pub fn image<T: Field>(m: &Matrix<T>) -> Subspace<T> {
    Subspace::row_space(&m.transpose())
}

pub fn meet<T: Field>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>, LinalgError> {
    a.meet(b)
}

pub fn join<T: Field>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>, LinalgError> {
    a.join(b)
}

/// `{v : m v ∈ s}`.
pub fn preimage<T: Field>(m: &Matrix<T>, s: &Subspace<T>) -> Result<Subspace<T>, LinalgError> {
    s.preimage_under(m)
}
