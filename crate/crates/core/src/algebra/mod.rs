//! Finite-dimensional operator algebras.
//!
//! All algebras are unital *-subalgebras of `M_d` for `d` up to a configurable
//! cap. [`MatrixAlgebra`] keeps them in block form; [`span`] holds the direct
//! span-growth and linear-solve routes used to cross-check it.

mod matrix;
mod random;
pub mod span;
mod state;
mod structure;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::{
    c, cluster_sorted, commutator, embed, frobenius, hermitian_eigen, identity, is_hermitian,
    kron, max_abs, trace, trace_inner, Matrix, MatrixJson, Pauli,
};
pub use random::{random_hermitian, random_unitary};
pub use state::{
    hermitian_basis, luders_map, luders_projectors, no_signaling_check, product_state,
    projector_equivalent, relative_dimension, spectral_decompose, statistical_independence_check,
    DensityState, IndependenceReport, NoSignalingReport, SpectralDecomposition,
};
pub use structure::{Component, MatrixAlgebra, CLUSTER_TOL, MEMBERSHIP_TOL};

pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("expected a {expected}x{expected} matrix, found dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not an orthogonal projector")]
    NotProjector,
    #[error("operator does not belong to the algebra")]
    NotInAlgebra,
    #[error("algebra is not a factor")]
    NotFactor,
    #[error("algebras are not complementary tensor factors")]
    NotTensorFactor,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("structure decomposition failed: {0}")]
    Decomposition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Smallest unital *-algebra containing `gens`, with the dimension cap enforced.
pub fn algebra_closure(
    d: usize,
    gens: &[Matrix],
    max_dim: usize,
) -> Result<MatrixAlgebra, AlgebraError> {
    if d > max_dim {
        return Err(AlgebraError::TooLarge { dim: d, limit: max_dim });
    }
    for g in gens {
        matrix::check_square(g)?;
    }
    MatrixAlgebra::from_generators(d, gens)
}

/// Wire form of an algebra: its trace-orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<MatrixJson>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &MatrixAlgebra) -> Self {
        Self {
            dim: a.dim(),
            basis: a.basis().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<MatrixAlgebra, AlgebraError> {
        let gens = self
            .basis
            .iter()
            .map(|m| {
                let x = m.to_matrix()?;
                if x.nrows() != self.dim {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: self.dim,
                        found: x.nrows(),
                    });
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let a = MatrixAlgebra::from_generators(self.dim, &gens)?;
        if a.dimension() != gens.len().max(1) {
            return Err(AlgebraError::Malformed(format!(
                "basis of {} elements generates an algebra of dimension {}",
                gens.len(),
                a.dimension()
            )));
        }
        Ok(a)
    }
}
