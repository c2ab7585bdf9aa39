//! Dense complex linear algebra: Jacobi eigensolver, one-sided Jacobi SVD,
//! spectral calculus, antilinear operators and Hilbert–Schmidt subspaces.

mod antilinear;
mod eig;
mod funcs;
mod matrix;
mod subspace;
mod svd;

use serde::{Deserialize, Serialize};

pub use antilinear::AntilinearOp;
pub use eig::{herm_eig, herm_eig_checked, op_norm, HermitianEigen};
pub use funcs::{
    apply_function, inv_sqrtm, matrix_function, min_eigenvalue, spectral_projection,
    spectral_projection_of, sqrtm, Interval, ScalarFunction, SpectralProjection,
};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use subspace::{
    inverse, least_squares_in_subspace, nullspace, nullspace_scaled, HsBasis, LeastSquares,
    LeastSquaresSolver,
};
pub use svd::{svd, Svd};

use crate::error::{Error, Result};

/// Numerical cutoffs shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Residual bound for certificates.
    pub assert_tol: f64,
    /// Attempts for randomized steps.
    pub retry_seeds: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_tol: 1e-9,
            assert_tol: 1e-8,
            retry_seeds: 8,
        }
    }
}

impl Tolerances {
    pub fn new(rank_tol: f64, assert_tol: f64, retry_seeds: usize) -> Result<Self> {
        if !(rank_tol > 0.0 && assert_tol > 0.0 && retry_seeds > 0) {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be strictly positive (rank_tol={rank_tol}, assert_tol={assert_tol}, retry_seeds={retry_seeds})"
            )));
        }
        Ok(Self {
            rank_tol,
            assert_tol,
            retry_seeds,
        })
    }
}
