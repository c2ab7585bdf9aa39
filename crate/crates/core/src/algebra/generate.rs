use super::VNAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HsBasis, Tolerances};

/// Smallest unital *-subalgebra of `M_d` containing `generators`.
///
/// Starts from the unit, the generators and their adjoints, then multiplies
/// the current basis by that set until the dimension stops growing.
pub fn generate_algebra(generators: &[ComplexMatrix], d: usize, tol: &Tolerances) -> Result<VNAlgebra> {
    let mut set = Vec::with_capacity(2 * generators.len());
    for g in generators {
        if g.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                context: "generate_algebra",
                expected: d,
                found: g.rows(),
            });
        }
        let norm = g.fro_norm();
        if norm == 0.0 {
            continue;
        }
        let g = g.scale_real(1.0 / norm);
        set.push(g.adjoint());
        set.push(g);
    }

    let mut basis = HsBasis::new();
    basis.try_push(&ComplexMatrix::identity(d), tol.rank_tol);
    for g in &set {
        basis.try_push_with_floor(g, tol.rank_tol, 1.0);
    }
    let mut frontier_start = 0;
    while basis.len() < d * d {
        let before = basis.len();
        let frontier: Vec<ComplexMatrix> = basis.elements()[frontier_start..].to_vec();
        for b in &frontier {
            for g in &set {
                // b and g have unit norm, so products are compared against 1.
                basis.try_push_with_floor(&b.matmul(g), tol.rank_tol, 1.0);
            }
        }
        if basis.len() == before {
            break;
        }
        frontier_start = before;
    }
    VNAlgebra::from_spanning_set(d, basis.elements(), tol)
}
