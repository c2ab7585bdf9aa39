//! Antilinear operators `ξ ↦ B · conj(ξ)`.

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::subspace::inverse;
use crate::error::Result;

/// Antilinear map on `ℂ^d` stored through its linear part `B`: `Tξ = B·conj(ξ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntilinearOp {
    linear_part: ComplexMatrix,
}

impl AntilinearOp {
    pub fn new(linear_part: ComplexMatrix) -> Self {
        assert!(linear_part.is_square(), "antilinear operator must be square");
        Self { linear_part }
    }

    /// Entrywise complex conjugation on `ℂ^d`.
    pub fn conjugation(d: usize) -> Self {
        Self::new(ComplexMatrix::identity(d))
    }

    pub fn linear_part(&self) -> &ComplexMatrix {
        &self.linear_part
    }

    pub fn dim(&self) -> usize {
        self.linear_part.rows()
    }

    pub fn apply(&self, xi: &ComplexMatrix) -> ComplexMatrix {
        self.linear_part.matmul(&xi.conj())
    }

    /// `T₁ ∘ T₂ = B₁ · conj(B₂)`, a linear map.
    pub fn compose(&self, other: &AntilinearOp) -> ComplexMatrix {
        self.linear_part.matmul(&other.linear_part.conj())
    }

    /// `T ∘ L` for linear `L`: linear part `B · conj(L)`.
    pub fn after_linear(&self, l: &ComplexMatrix) -> AntilinearOp {
        AntilinearOp::new(self.linear_part.matmul(&l.conj()))
    }

    /// `L ∘ T` for linear `L`: linear part `L · B`.
    pub fn before_linear(&self, l: &ComplexMatrix) -> AntilinearOp {
        AntilinearOp::new(l.matmul(&self.linear_part))
    }

    /// Antilinear adjoint, characterized by `(Tξ | η) = (T*η | ξ)`; its linear
    /// part is `Bᵀ`.
    pub fn adjoint(&self) -> AntilinearOp {
        AntilinearOp::new(self.linear_part.transpose())
    }

    pub fn inverse(&self) -> Result<AntilinearOp> {
        Ok(AntilinearOp::new(inverse(&self.linear_part)?.conj()))
    }

    /// `T · x · T⁻¹` for linear `x`, given the precomputed inverse of the linear part.
    pub fn conjugate_with(&self, x: &ComplexMatrix, linear_inverse: &ComplexMatrix) -> ComplexMatrix {
        self.linear_part.matmul(&x.conj()).matmul(linear_inverse)
    }

    /// `T · x · T⁻¹` for linear `x`.
    pub fn conjugate(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        Ok(self.conjugate_with(x, &inverse(&self.linear_part)?))
    }

    /// `‖T² − 1‖_F`.
    pub fn involution_defect(&self) -> f64 {
        (&self.compose(self) - &ComplexMatrix::identity(self.dim())).fro_norm()
    }

    /// Isometry defect `‖B*B − 1‖_F`; zero exactly when `(Tξ|Tη) = (η|ξ)`.
    pub fn isometry_defect(&self) -> f64 {
        self.linear_part.unitary_defect()
    }
}
