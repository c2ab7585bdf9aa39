//! Spatial implementation of *-isomorphisms between block-decomposed algebras.

use serde::{Deserialize, Serialize};

use super::okayasu::{okayasu_correct, OkayasuResult};
use crate::algebra::{commutant, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{inverse, svd, ComplexMatrix, Tolerances};

/// `C_ji = ⟨f(B_i), B′_j⟩`, the matrix of `f : M → N` in the two orthonormal bases.
pub fn coordinate_matrix(m: &VNAlgebra, n: &VNAlgebra, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> ComplexMatrix {
    let images: Vec<ComplexMatrix> = m.elements().iter().map(f).collect();
    ComplexMatrix::from_fn(n.dim(), m.dim(), |j, i| images[i].hs_inner(&n.elements()[j]))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpatialResult {
    pub u: ComplexMatrix,
    /// `max_i ‖π(B_i) − U B_i U*‖_F`
    pub implementation_residual: f64,
    pub unitary_defect: f64,
    /// `(ι, κ)`: block `ι` of `M` is carried onto block `κ` of `N`.
    pub block_map: Vec<(usize, usize)>,
    pub certificates: CertificateSet,
}

fn apply(n: &VNAlgebra, c: &ComplexMatrix, coords: &[crate::linalg::C64]) -> ComplexMatrix {
    let mut out = vec![crate::linalg::ZERO; n.dim()];
    for (j, o) in out.iter_mut().enumerate() {
        for (i, x) in coords.iter().enumerate() {
            *o += c[(j, i)] * x;
        }
    }
    n.element(&out)
}

/// Unitary `U` with `π(x) = U x U*`, where `π(B_i) = Σ_j C_ji B′_j`.
///
/// Each block of `M` is matched with the block of `N` carrying `π(p_ι)`;
/// the images of the matrix units fix `V ∈ U(n)` with `V e_ij V* = f_ij`,
/// and `U = Σ W_κ* (V ⊗ 1) W_ι`. Matching multiplicities are required.
pub fn spatial_implement(m: &VNAlgebra, n: &VNAlgebra, c: &ComplexMatrix, tol: &Tolerances) -> Result<SpatialResult> {
    let d = m.ambient_dim();
    if n.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            context: "spatial_implement target",
            expected: d,
            found: n.ambient_dim(),
        });
    }
    if c.shape() != (n.dim(), m.dim()) {
        return Err(Error::DimensionMismatch {
            context: "spatial_implement coordinates",
            expected: n.dim(),
            found: c.rows(),
        });
    }
    let pi = |x: &ComplexMatrix| apply(n, c, &m.coordinates(x));
    let b = m.elements();
    let images: Vec<ComplexMatrix> = b.iter().map(pi).collect();

    let mut star: f64 = 0.0;
    for (x, px) in b.iter().zip(&images) {
        star = star.max((&pi(&x.adjoint()) - &px.adjoint()).fro_norm());
    }
    if star > tol.assert_tol {
        return Err(Error::NotStarPreserving { defect: star });
    }
    let mut mult: f64 = 0.0;
    for (x, px) in b.iter().zip(&images) {
        for (y, py) in b.iter().zip(&images) {
            mult = mult.max((&pi(&x.matmul(y)) - &px.matmul(py)).fro_norm());
        }
    }
    if mult > tol.assert_tol {
        return Err(Error::NotMultiplicative { defect: mult });
    }

    let sm = m.structure_or_compute(tol)?;
    let sn = n.structure_or_compute(tol)?;
    let mut u = ComplexMatrix::zeros(d, d);
    let mut block_map = Vec::with_capacity(sm.blocks.len());
    for (iota, bm) in sm.blocks.iter().enumerate() {
        let image = pi(&bm.projection);
        let (kappa, bn) = sn
            .blocks
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| {
                let wx = x.projection.matmul(&image).fro_norm();
                let wy = y.projection.matmul(&image).fro_norm();
                wx.total_cmp(&wy)
            })
            .ok_or_else(|| Error::Structural("target algebra has no blocks".into()))?;
        if (bn.n, bn.m) != (bm.n, bm.m) {
            return Err(Error::Structural(format!(
                "block ({},{}) is carried onto block ({},{}); multiplicities differ, so π is not spatial",
                bm.n, bm.m, bn.n, bn.m
            )));
        }
        let k = bm.n;
        let f: Vec<ComplexMatrix> = (0..k).map(|j| bn.factor_component(&pi(&bm.matrix_unit(j, 0)))).collect();
        let s = svd(&f[0]);
        let v1 = s.u.col(0);
        let v = ComplexMatrix::from_columns(&f.iter().map(|fj| fj.matmul(&v1)).collect::<Vec<_>>());
        let lifted = v.kron(&ComplexMatrix::identity(bm.m));
        u += &bn.w.adjoint().matmul(&lifted).matmul(&bm.w);
        block_map.push((iota, kappa));
    }

    let ua = u.adjoint();
    let implementation_residual = b
        .iter()
        .zip(&images)
        .map(|(x, px)| (px - &u.matmul(x).matmul(&ua)).fro_norm())
        .fold(0.0, f64::max);
    let unitary_defect = u.unitary_defect();
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::SPATIAL_IMPLEMENTATION, implementation_residual, tol.assert_tol, 0.0);
    certificates.at_most(ids::SPATIAL_UNITARY, unitary_defect, tol.assert_tol, 0.0);
    Ok(SpatialResult {
        u,
        implementation_residual,
        unitary_defect,
        block_map,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpatialChain {
    pub okayasu: OkayasuResult,
    pub spatial: SpatialResult,
    /// `‖U*Ta − P_{M′}(U*Ta)‖_F / ‖U*Ta‖_F`
    pub commutant_residual: f64,
}

/// `T ↦ a ↦ U` with `Ad_U = Ad_{Ta}` on `M`, and the check that `U*Ta ∈ M′`.
pub fn spatial_chain(m: &VNAlgebra, t: &ComplexMatrix, tol: &Tolerances) -> Result<SpatialChain> {
    let okayasu = okayasu_correct(m, t, tol)?;
    let ta = t.matmul(&okayasu.a);
    let ta_inv = inverse(&ta)?;
    let c = coordinate_matrix(m, m, |x| ta.matmul(x).matmul(&ta_inv));
    let spatial = spatial_implement(m, m, &c, tol)?;
    let r = spatial.u.adjoint().matmul(&ta);
    let mc = commutant(m, tol)?;
    let commutant_residual = mc.membership_residual(&r) / r.fro_norm();
    Ok(SpatialChain {
        okayasu,
        spatial,
        commutant_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};
    use crate::modular::random_normalizing_operator;
    use crate::rng::{haar_unitary, seeded};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_map() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2), (1, 1)]).unwrap(), 8).unwrap();
        let c = ComplexMatrix::identity(m.dim());
        let r = spatial_implement(&m, &m, &c, &tol()).unwrap();
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
    }

    #[test]
    fn conjugation_round_trip() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2)]).unwrap(), 9).unwrap();
        let v = haar_unitary(4, &mut seeded(2));
        let vm: Vec<ComplexMatrix> = m.elements().iter().map(|x| v.matmul(x).matmul(&v.adjoint())).collect();
        let n = VNAlgebra::from_spanning_set(4, vm.iter(), &tol()).unwrap();
        let c = coordinate_matrix(&m, &n, |x| v.matmul(x).matmul(&v.adjoint()));
        let r = spatial_implement(&m, &n, &c, &tol()).unwrap();
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
        for x in m.elements() {
            let lhs = r.u.matmul(x).matmul(&r.u.adjoint());
            assert!((&lhs - &v.matmul(x).matmul(&v.adjoint())).fro_norm() < 1e-8);
        }
    }

    #[test]
    fn rejects_transpose() {
        let m = VNAlgebra::full(2);
        let c = coordinate_matrix(&m, &m, |x| x.transpose());
        let r = spatial_implement(&m, &m, &c, &tol());
        assert!(matches!(r, Err(Error::NotMultiplicative { .. })), "{r:?}");
        let c = coordinate_matrix(&m, &m, |x| x.scale_real(2.0));
        assert!(matches!(spatial_implement(&m, &m, &c, &tol()), Err(Error::NotMultiplicative { .. })));
        let c = coordinate_matrix(&m, &m, |x| x.scale(crate::linalg::I));
        assert!(matches!(spatial_implement(&m, &m, &c, &tol()), Err(Error::NotStarPreserving { .. })));
    }

    #[test]
    fn chain_lands_in_commutant() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2), (1, 1)]).unwrap(), 4).unwrap();
        let m = m.with_structure(&tol()).unwrap();
        let mc = commutant(&m, &tol()).unwrap();
        let s = m.cached_structure().unwrap().clone();
        for seed in 0..3 {
            let t = random_normalizing_operator(&m, &mc, &s, seed, &tol()).unwrap();
            let c = spatial_chain(&m, &t, &tol()).unwrap();
            assert!(c.spatial.certificates.all_pass());
            assert!(c.commutant_residual < 1e-8, "{}", c.commutant_residual);
        }
    }
}
