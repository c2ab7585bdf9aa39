//! GNS data and modular objects, standard forms, and the operator devices
//! built on them: positive corrections of normalizing operators, spatial
//! implementation of isomorphisms, cyclic/separating splitting, intertwiners
//! and vector-functional decompositions.

mod gns;
mod okayasu;
mod spatial;
mod split;
mod standard;

pub use gns::{gns, GNSData};
pub use okayasu::{okayasu_correct, random_normalizing_operator, star_defect, OkayasuResult};
pub use spatial::{coordinate_matrix, spatial_chain, spatial_implement, SpatialChain, SpatialResult};
pub use split::{
    cyclic_separating_split, vector_functional_decomposition, verify_intertwining, IntertwiningReport,
    SplitResult, VectorDecomposition,
};
pub use standard::{check_t_criterion, is_standard, Obstruction, StandardVerdict, TCriterionReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig_checked, op_norm, ComplexMatrix, Tolerances};

/// Positive functional `x ↦ tr(ρ x)` given by its ambient density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDensity {
    rho: ComplexMatrix,
    pub faithful: bool,
    pub normalized: bool,
    pub lambda_min: f64,
}

impl StateDensity {
    pub fn new(rho: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let e = herm_eig_checked(&rho, tol.assert_tol)?;
        let scale = op_norm(&rho);
        let lambda_min = e.min();
        if lambda_min < -tol.rank_tol * scale.max(1.0) {
            return Err(Error::Domain {
                function: "state density",
                eigenvalue: lambda_min,
            });
        }
        let rho = rho.hermitian_part();
        let normalized = (rho.trace().re - 1.0).abs() <= tol.assert_tol;
        Ok(Self {
            faithful: lambda_min >= tol.rank_tol * scale,
            normalized,
            lambda_min,
            rho,
        })
    }

    /// Normalized trace `1/d · Tr`.
    pub fn tracial(d: usize) -> Self {
        Self::new(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), &Tolerances::default())
            .expect("tracial state")
    }

    /// Vector functional `ω_ζ(x) = (xζ | ζ)`.
    pub fn vector(zeta: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        Self::new(ComplexMatrix::outer(zeta, zeta), tol)
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn eval(&self, x: &ComplexMatrix) -> crate::linalg::C64 {
        self.rho.matmul(x).trace()
    }
}
