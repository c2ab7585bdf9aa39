//! Structural certificates for an algebra and its commutant.

use serde::{Deserialize, Serialize};

use super::{centre, commutant, cyclic_analysis, CyclicReport, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::Result;
use crate::linalg::Tolerances;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureReport {
    pub ambient_dim: usize,
    pub dim_algebra: usize,
    pub shape: Vec<(usize, usize)>,
    pub centre_dim: usize,
    pub closure_defect: f64,
    pub block_form_residual: f64,
    pub partition_defect: f64,
    pub certificates: CertificateSet,
}

pub fn structure_report(m: &VNAlgebra, tol: &Tolerances) -> Result<StructureReport> {
    let s = m.structure_or_compute(tol)?;
    let closure_defect = m.closure_defect();
    let block_form_residual = s.block_form_residual(m);
    let partition_defect = s.partition_defect();
    let mismatch = s.ambient_dim().abs_diff(m.ambient_dim()) + s.algebra_dim().abs_diff(m.dim());
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::ALGEBRA_CLOSURE, closure_defect, tol.assert_tol, 0.0);
    certificates.at_most(
        ids::BLOCK_FORM,
        block_form_residual.max(partition_defect),
        tol.assert_tol,
        0.0,
    );
    certificates.at_most(ids::BLOCK_DIMENSIONS, mismatch as f64, 0.0, 0.0);
    Ok(StructureReport {
        ambient_dim: m.ambient_dim(),
        dim_algebra: m.dim(),
        shape: s.shape(),
        centre_dim: s.centre_dim(),
        closure_defect,
        block_form_residual,
        partition_defect,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommutantReport {
    pub dim_commutant: usize,
    /// `Σ m_ι²` from the block shape of `M`.
    pub expected_dim: usize,
    pub commutant_shape: Vec<(usize, usize)>,
    /// Subspace distance between `M″` and `M`, or 1 when the dimensions differ.
    pub double_commutant_residual: f64,
    /// Subspace distance between `Z(M)` and `Z(M′)`.
    pub centre_residual: f64,
    pub cyclic: CyclicReport,
    pub commutant_cyclic: CyclicReport,
    pub certificates: CertificateSet,
}

/// `M″ = M`, `dim M′ = Σ m²`, `Z(M) = Z(M′)`, and cyclic for `M` exactly
/// when separating for `M′` (and the other way round).
pub fn commutant_report(m: &VNAlgebra, tol: &Tolerances) -> Result<CommutantReport> {
    let s = m.structure_or_compute(tol)?;
    let mc = commutant(m, tol)?.with_structure(tol)?;
    let mcc = commutant(&mc, tol)?;
    let mut double_commutant_residual = mcc.basis().mutual_residual(m.basis());
    if mcc.dim() != m.dim() {
        double_commutant_residual = double_commutant_residual.max(1.0);
    }
    let z = centre(m, tol)?;
    let zc = centre(&mc, tol)?;
    let mut centre_residual = z.mutual_residual(&zc);
    if z.len() != zc.len() {
        centre_residual = centre_residual.max(1.0);
    }
    let cyclic = cyclic_analysis(m, tol)?;
    let commutant_cyclic = cyclic_analysis(&mc, tol)?;
    let duality_breaks = usize::from(cyclic.has_cyclic != commutant_cyclic.has_separating)
        + usize::from(cyclic.has_separating != commutant_cyclic.has_cyclic);
    let expected_dim = s.commutant_dim();
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::DOUBLE_COMMUTANT, double_commutant_residual, tol.assert_tol, 0.0);
    certificates.at_most(
        ids::COMMUTANT_DIMENSION,
        mc.dim().abs_diff(expected_dim) as f64,
        0.0,
        0.0,
    );
    certificates.at_most(ids::CENTRE_AGREEMENT, centre_residual, tol.assert_tol, 0.0);
    certificates.at_most(ids::CYCLIC_DUALITY, duality_breaks as f64, 0.0, 0.0);
    Ok(CommutantReport {
        dim_commutant: mc.dim(),
        expected_dim,
        commutant_shape: mc.structure_or_compute(tol)?.shape(),
        double_commutant_residual,
        centre_residual,
        cyclic,
        commutant_cyclic,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};

    #[test]
    fn mixed_shape_reports() {
        let tol = Tolerances::default();
        let (m, _) = random_algebra(&"(2,3),(1,1)".parse::<BlockSpec>().unwrap(), 4).unwrap();
        let s = structure_report(&m, &tol).unwrap();
        assert_eq!(s.shape, vec![(1, 1), (2, 3)]);
        assert_eq!(s.centre_dim, 2);
        assert!(s.certificates.all_pass());
        let c = commutant_report(&m, &tol).unwrap();
        assert_eq!(c.dim_commutant, 10);
        assert_eq!(c.commutant_shape, vec![(1, 1), (3, 2)]);
        assert!(!c.cyclic.has_cyclic && c.cyclic.has_separating);
        assert!(c.certificates.all_pass(), "{:?}", c.certificates);
    }

    #[test]
    fn full_and_scalars_swap() {
        let tol = Tolerances::default();
        let c = commutant_report(&VNAlgebra::full(3), &tol).unwrap();
        assert!(c.cyclic.has_cyclic && !c.cyclic.has_separating);
        assert!(c.commutant_cyclic.has_separating && !c.commutant_cyclic.has_cyclic);
        assert_eq!(c.dim_commutant, 1);
        assert!(c.certificates.all_pass());
    }
}
