//! Standard form: the blockwise flip-conjugation and the antilinear test
//! `T M T⁻¹ = M′`, `T z T⁻¹ = z*`.

use serde::{Deserialize, Serialize};

use crate::algebra::{centre, commutant, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{inverse, svd, AntilinearOp, ComplexMatrix, HsBasis, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    /// Blocks with `n ≠ m`.
    pub unbalanced: Vec<(usize, usize)>,
    pub dim_algebra: usize,
    pub dim_commutant: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardVerdict {
    pub standard: bool,
    pub j: Option<AntilinearOp>,
    pub obstruction: Option<Obstruction>,
    pub certificates: CertificateSet,
}

/// Flip `a ⊗ b ↦ b ⊗ a` on `ℂⁿ ⊗ ℂⁿ`.
fn flip(n: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            f[(b * n + a, a * n + b)] = crate::linalg::ONE;
        }
    }
    f
}

/// Decides standardness from the block shape, and builds `J` through the
/// block unitaries when every block is balanced.
pub fn is_standard(m: &VNAlgebra, tol: &Tolerances) -> Result<StandardVerdict> {
    let s = m.structure_or_compute(tol)?;
    let unbalanced: Vec<(usize, usize)> = s.shape().into_iter().filter(|&(n, k)| n != k).collect();
    if !unbalanced.is_empty() {
        return Ok(StandardVerdict {
            standard: false,
            j: None,
            obstruction: Some(Obstruction {
                unbalanced,
                dim_algebra: s.algebra_dim(),
                dim_commutant: s.commutant_dim(),
            }),
            certificates: CertificateSet::new(),
        });
    }
    let d = m.ambient_dim();
    let mut lj = ComplexMatrix::zeros(d, d);
    for b in &s.blocks {
        lj += &b.w.adjoint().matmul(&flip(b.n)).matmul(&b.w.conj());
    }
    let j = AntilinearOp::new(lj);
    let report = check_t_criterion(m, &j, tol)?;
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::STANDARD_J_COMMUTANT, report.commutant_residual, tol.assert_tol, 0.0);
    certificates.at_most(ids::STANDARD_J_CENTRE, report.centre_residual, tol.assert_tol, 0.0);
    certificates.at_most(
        ids::STANDARD_J_CONJUGATION,
        j.involution_defect().max(j.isometry_defect()),
        tol.assert_tol,
        0.0,
    );
    Ok(StandardVerdict {
        standard: true,
        j: Some(j),
        obstruction: None,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TCriterionReport {
    pub passes: bool,
    /// `dim M = dim M′`; a necessary condition checked first.
    pub dimensions_match: bool,
    pub dim_algebra: usize,
    pub dim_commutant: usize,
    /// Mutual projection residual between `span{T B_i T⁻¹}` and `M′`.
    pub commutant_residual: f64,
    /// `max ‖T z T⁻¹ − z*‖` over a basis of the centre.
    pub centre_residual: f64,
}

/// Tests whether the bijective antilinear `T` satisfies `T M T⁻¹ = M′` and
/// `T z T⁻¹ = z*` on the centre.
pub fn check_t_criterion(m: &VNAlgebra, t: &AntilinearOp, tol: &Tolerances) -> Result<TCriterionReport> {
    let d = m.ambient_dim();
    if t.dim() != d {
        return Err(Error::DimensionMismatch {
            context: "antilinear operator",
            expected: d,
            found: t.dim(),
        });
    }
    let sv = svd(t.linear_part());
    if sv.min() < tol.rank_tol * sv.max().max(1.0) {
        return Err(Error::Singular { sigma_min: sv.min() });
    }
    let linv = inverse(t.linear_part())?;
    let mc = commutant(m, tol)?;
    let images: Vec<ComplexMatrix> = m.elements().iter().map(|b| t.conjugate_with(b, &linv)).collect();
    let span = HsBasis::orthonormalize(images.iter(), tol.rank_tol);
    let commutant_residual = span.mutual_residual(mc.basis());
    let mut centre_residual: f64 = 0.0;
    for z in centre(m, tol)?.iter() {
        centre_residual = centre_residual.max((&t.conjugate_with(z, &linv) - &z.adjoint()).fro_norm());
    }
    let dimensions_match = m.dim() == mc.dim();
    Ok(TCriterionReport {
        passes: dimensions_match && commutant_residual <= tol.assert_tol && centre_residual <= tol.assert_tol,
        dimensions_match,
        dim_algebra: m.dim(),
        dim_commutant: mc.dim(),
        commutant_residual,
        centre_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, random_element, BlockSpec};
    use crate::rng::seeded;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn balanced_block_is_standard() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2)]).unwrap(), 3).unwrap();
        let v = is_standard(&m, &tol()).unwrap();
        assert!(v.standard);
        assert!(v.certificates.all_pass(), "{:?}", v.certificates);
    }

    #[test]
    fn scalars_on_a_line() {
        let v = is_standard(&VNAlgebra::scalars(1), &tol()).unwrap();
        assert!(v.standard);
        let j = v.j.unwrap();
        assert!((j.linear_part()[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn excess_multiplicity_obstruction() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 3)]).unwrap(), 3).unwrap();
        let v = is_standard(&m, &tol()).unwrap();
        assert!(!v.standard);
        let o = v.obstruction.unwrap();
        assert_eq!((o.dim_algebra, o.dim_commutant), (4, 9));
        let r = check_t_criterion(&m, &AntilinearOp::conjugation(6), &tol()).unwrap();
        assert!(!r.passes && !r.dimensions_match);
    }

    #[test]
    fn commutant_multiple_of_j_passes() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2), (1, 1)]).unwrap(), 5).unwrap();
        let j = is_standard(&m, &tol()).unwrap().j.unwrap();
        let mc = commutant(&m, &tol()).unwrap();
        let mut rng = seeded(1);
        let mp = &random_element(&mc, &mut rng) + &ComplexMatrix::identity(5).scale_real(3.0);
        let r = check_t_criterion(&m, &j.before_linear(&mp), &tol()).unwrap();
        assert!(r.passes, "{r:?}");
    }
}
