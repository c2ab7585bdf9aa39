//! Support projections and Murray–von Neumann comparison.

use serde::{Deserialize, Serialize};

use super::VNAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, svd, ComplexMatrix, Tolerances};

#[derive(Debug, Clone)]
pub struct Supports {
    /// Projection onto `range(x)`.
    pub left: ComplexMatrix,
    /// Projection onto `range(x*)`.
    pub right: ComplexMatrix,
    /// Sum of the central blocks where `x` is nonzero.
    pub central: ComplexMatrix,
}

/// `l(x)`, `r(x)` and `z(x)` for `x ∈ M`.
pub fn supports(x: &ComplexMatrix, m: &VNAlgebra, tol: &Tolerances) -> Result<Supports> {
    m.require_member(x, tol)?;
    let d = m.ambient_dim();
    let s = svd(x);
    let t = s.threshold(tol.rank_tol, 0.0);
    let mut left = ComplexMatrix::zeros(d, d);
    let mut right = ComplexMatrix::zeros(d, d);
    for (k, &sigma) in s.values.iter().enumerate() {
        if sigma > t {
            let u = s.u.col(k);
            let v = s.v.col(k);
            left += &ComplexMatrix::outer(&u, &u);
            right += &ComplexMatrix::outer(&v, &v);
        }
    }
    let structure = m.structure_or_compute(tol)?;
    let mut central = ComplexMatrix::zeros(d, d);
    let scale = x.fro_norm();
    for b in &structure.blocks {
        if scale > 0.0 && b.factor_component(x).fro_norm() > tol.rank_tol * scale {
            central += &b.projection;
        }
    }
    Ok(Supports { left, right, central })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `p ~ q`
    Equivalent,
    /// `p ≺ q`: `p` is equivalent to a subprojection of `q`, strictly in some block.
    Below,
    /// `q ≺ p`
    Above,
    /// Neither; the central projection `z` splits the comparison.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComparison {
    pub n: usize,
    pub m: usize,
    /// Rank of the factor component of `p`.
    pub rank_p: usize,
    pub rank_q: usize,
}

/// Comparison of two projections with an explicit witness.
///
/// `v ∈ M` is a partial isometry with `v*v ≤ p` and `vv* ≤ q`; on the central
/// projection `z` it is `v*v = zp`, and on `1 − z` it is `vv* = (1 − z)q`.
#[derive(Debug, Clone)]
pub struct ProjectionPair {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
    pub relation: Relation,
    pub v: ComplexMatrix,
    /// Blocks where `rank_p ≤ rank_q`.
    pub z: ComplexMatrix,
    pub blocks: Vec<BlockComparison>,
}

impl ProjectionPair {
    /// Largest defect among `z·v*v = zp`, `(1 − z)·vv* = (1 − z)q`, `v*v ≤ p`
    /// and `vv* ≤ q`.
    pub fn witness_defect(&self) -> f64 {
        let d = self.p.rows();
        let one_minus_z = &ComplexMatrix::identity(d) - &self.z;
        let vv = self.v.matmul(&self.v.adjoint());
        let vsv = self.v.adjoint().matmul(&self.v);
        let source = (&self.z.matmul(&vsv) - &self.z.matmul(&self.p)).fro_norm();
        let range = (&one_minus_z.matmul(&vv) - &one_minus_z.matmul(&self.q)).fro_norm();
        let below_p = (&self.p.matmul(&vsv) - &vsv).fro_norm();
        let below_q = (&self.q.matmul(&vv) - &vv).fro_norm();
        source.max(range).max(below_p).max(below_q)
    }
}

fn projection_defect(p: &ComplexMatrix) -> f64 {
    (&p.matmul(p) - p).fro_norm().max(p.hermitian_defect())
}

/// Orthonormal eigenvectors of a projection's range.
fn range_vectors(p: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let e = herm_eig(p)?;
    Ok((0..e.values.len())
        .rev()
        .filter(|&k| e.values[k] > 0.5)
        .map(|k| e.vector(k))
        .collect())
}

/// Murray–von Neumann comparison of `p, q ∈ M`, block by block through the
/// ranks of their factor components.
pub fn mv_equivalent(p: &ComplexMatrix, q: &ComplexMatrix, m: &VNAlgebra, tol: &Tolerances) -> Result<ProjectionPair> {
    for x in [p, q] {
        let defect = projection_defect(x);
        if defect > tol.assert_tol * x.fro_norm().max(1.0) {
            return Err(Error::NotProjection { defect });
        }
        m.require_member(x, tol)?;
    }
    let structure = m.structure_or_compute(tol)?;
    let d = m.ambient_dim();
    let mut v = ComplexMatrix::zeros(d, d);
    let mut z = ComplexMatrix::zeros(d, d);
    let mut blocks = Vec::with_capacity(structure.blocks.len());
    let (mut all_eq, mut all_le, mut all_ge) = (true, true, true);
    for b in &structure.blocks {
        let pb = b.factor_component(p).hermitian_part();
        let qb = b.factor_component(q).hermitian_part();
        let a = range_vectors(&pb)?;
        let c = range_vectors(&qb)?;
        let (rp, rq) = (a.len(), c.len());
        let mut vb = ComplexMatrix::zeros(b.n, b.n);
        for (ai, ci) in a.iter().zip(&c) {
            vb += &ComplexMatrix::outer(ci, ai);
        }
        v += &b.embed_factor(&vb);
        if rp <= rq {
            z += &b.projection;
        }
        all_eq &= rp == rq;
        all_le &= rp <= rq;
        all_ge &= rp >= rq;
        blocks.push(BlockComparison { n: b.n, m: b.m, rank_p: rp, rank_q: rq });
    }
    let relation = if all_eq {
        Relation::Equivalent
    } else if all_le {
        Relation::Below
    } else if all_ge {
        Relation::Above
    } else {
        Relation::Mixed
    };
    // Equal projections get v = p exactly rather than a rotated eigenbasis.
    if (p - q).fro_norm() <= tol.assert_tol {
        v = p.clone();
    }
    Ok(ProjectionPair {
        p: p.clone(),
        q: q.clone(),
        relation,
        v,
        z,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::rng::{random_unit_vector, seeded};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn diagonal_supports() {
        let m = VNAlgebra::full(2);
        let x = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let s = supports(&x, &m, &tol()).unwrap();
        assert!((&s.left - &x).fro_norm() < 1e-12);
        assert!((&s.right - &x).fro_norm() < 1e-12);
        assert!((&s.central - &ComplexMatrix::identity(2)).fro_norm() < 1e-12);
    }

    #[test]
    fn rank_one_projections_in_m2_are_equivalent() {
        let m = VNAlgebra::full(2).with_structure(&tol()).unwrap();
        let mut rng = seeded(2);
        let u = random_unit_vector(2, &mut rng);
        let p = ComplexMatrix::outer(&u, &u);
        let q = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let pair = mv_equivalent(&p, &q, &m, &tol()).unwrap();
        assert_eq!(pair.relation, Relation::Equivalent);
        assert!((&pair.v.adjoint().matmul(&pair.v) - &p).fro_norm() < 1e-10);
        assert!((&pair.v.matmul(&pair.v.adjoint()) - &q).fro_norm() < 1e-10);
    }

    #[test]
    fn strict_comparison_in_m3() {
        let m = VNAlgebra::full(3);
        let p = ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0]);
        let q = ComplexMatrix::from_real_diag(&[0.0, 1.0, 1.0]);
        let pair = mv_equivalent(&p, &q, &m, &tol()).unwrap();
        assert_eq!(pair.relation, Relation::Below);
        assert!(pair.witness_defect() < 1e-10);
    }

    #[test]
    fn rejects_non_projection() {
        let m = VNAlgebra::full(2);
        let x = ComplexMatrix::from_diag(&[C64::new(0.5, 0.0), C64::new(1.0, 0.0)]);
        assert!(matches!(
            mv_equivalent(&x, &x, &m, &tol()),
            Err(Error::NotProjection { .. })
        ));
    }
}
