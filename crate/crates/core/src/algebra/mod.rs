//! Finite-dimensional von Neumann algebras: unital *-subalgebras of `M_d(ℂ)`
//! stored as Hilbert–Schmidt-orthonormal bases.

mod checks;
mod commutant;
mod cyclic;
mod generate;
mod modules;
mod projections;
mod random;
mod structure;

pub use checks::{commutant_report, structure_report, CommutantReport, StructureReport};
pub use commutant::{centre, centre_within, commutant, commutant_of_set};
pub use cyclic::{cyclic_analysis, orbit_matrix, orbit_rank, CyclicReport};
pub use generate::generate_algebra;
pub use modules::{module_generators, ModuleGenerators};
pub use projections::{mv_equivalent, supports, BlockComparison, ProjectionPair, Relation, Supports};
pub use random::{canonical_algebra, random_algebra, random_spec, random_element, random_self_adjoint, BlockSpec};
pub use structure::{partial_trace_first, partial_trace_second, structure, Block, CentralDecomposition};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HsBasis, Tolerances, C64};

#[derive(Debug, Clone)]
pub struct VNAlgebra {
    ambient_dim: usize,
    basis: HsBasis,
    structure: Option<CentralDecomposition>,
}

impl VNAlgebra {
    /// Span of the unit and `items`, assumed closed under product and adjoint.
    ///
    /// The unit comes first in the basis, followed by the independent part of
    /// `items` in order.
    pub fn from_spanning_set<'a>(
        ambient_dim: usize,
        items: impl IntoIterator<Item = &'a ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let unit = ComplexMatrix::identity(ambient_dim);
        let items: Vec<&ComplexMatrix> = items.into_iter().collect();
        if let Some(x) = items.iter().find(|x| x.shape() != (ambient_dim, ambient_dim)) {
            return Err(Error::DimensionMismatch {
                context: "algebra element",
                expected: ambient_dim,
                found: x.rows(),
            });
        }
        let basis = HsBasis::orthonormalize(std::iter::once(&unit).chain(items), tol.rank_tol);
        Ok(Self {
            ambient_dim,
            basis,
            structure: None,
        })
    }

    /// `ℂ·1` on `ℂ^d`.
    pub fn scalars(d: usize) -> Self {
        Self::from_spanning_set(d, [], &Tolerances::default()).expect("scalar algebra")
    }

    /// `B(ℂ^d)` with the matrix-unit basis after the unit.
    pub fn full(d: usize) -> Self {
        let units: Vec<ComplexMatrix> = (0..d)
            .flat_map(|i| (0..d).map(move |j| ComplexMatrix::unit(d, i, j)))
            .collect();
        Self::from_spanning_set(d, units.iter(), &Tolerances::default()).expect("full algebra")
    }

    /// Diagonal matrices on `ℂ^d`.
    pub fn diagonal(d: usize) -> Self {
        let units: Vec<ComplexMatrix> = (0..d).map(|i| ComplexMatrix::unit(d, i, i)).collect();
        Self::from_spanning_set(d, units.iter(), &Tolerances::default()).expect("diagonal algebra")
    }

    /// Computes and caches the central decomposition.
    pub fn with_structure(mut self, tol: &Tolerances) -> Result<Self> {
        if self.structure.is_none() {
            self.structure = Some(structure(&self, tol)?);
        }
        Ok(self)
    }

    /// Installs a decomposition computed elsewhere after checking it.
    pub fn with_known_structure(mut self, s: CentralDecomposition, tol: &Tolerances) -> Result<Self> {
        let residual = s.block_form_residual(&self);
        if residual > tol.assert_tol {
            return Err(Error::Structural(format!(
                "supplied decomposition does not fit the algebra (residual {residual:.3e})"
            )));
        }
        self.structure = Some(s);
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Linear dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &HsBasis {
        &self.basis
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        self.basis.elements()
    }

    pub fn cached_structure(&self) -> Option<&CentralDecomposition> {
        self.structure.as_ref()
    }

    /// Cached decomposition, or a freshly computed one.
    pub fn structure_or_compute(&self, tol: &Tolerances) -> Result<std::borrow::Cow<'_, CentralDecomposition>> {
        match &self.structure {
            Some(s) => Ok(std::borrow::Cow::Borrowed(s)),
            None => Ok(std::borrow::Cow::Owned(structure(self, tol)?)),
        }
    }

    pub fn coordinates(&self, x: &ComplexMatrix) -> Vec<C64> {
        self.basis.coefficients(x)
    }

    pub fn element(&self, coords: &[C64]) -> ComplexMatrix {
        self.basis.combine(coords)
    }

    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.basis.project(x)
    }

    /// `‖x − P_M(x)‖_F`.
    pub fn membership_residual(&self, x: &ComplexMatrix) -> f64 {
        self.basis.residual(x)
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: &Tolerances) -> bool {
        self.membership_residual(x) <= tol.assert_tol * x.fro_norm().max(1.0)
    }

    /// Rejects `x` when it is not in the span of the basis.
    pub fn require_member(&self, x: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
        if x.shape() != (self.ambient_dim, self.ambient_dim) {
            return Err(Error::DimensionMismatch {
                context: "algebra element",
                expected: self.ambient_dim,
                found: x.rows(),
            });
        }
        let residual = self.membership_residual(x);
        if residual > tol.assert_tol * x.fro_norm().max(1.0) {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(())
    }

    /// Largest projection residual of `B_i*` and `B_i B_j` over basis pairs,
    /// together with the unit.
    pub fn closure_defect(&self) -> f64 {
        let unit = ComplexMatrix::identity(self.ambient_dim);
        let mut worst = self.membership_residual(&unit);
        for a in self.elements() {
            worst = worst.max(self.membership_residual(&a.adjoint()));
            for b in self.elements() {
                worst = worst.max(self.membership_residual(&a.matmul(b)));
            }
        }
        worst
    }

    /// Orthonormality defect `max |⟨B_i, B_j⟩ − δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let e = self.elements();
        let mut worst: f64 = 0.0;
        for (i, a) in e.iter().enumerate() {
            for (j, b) in e.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.hs_inner(b) - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Self-adjoint spanning set `{Re B_i, Im B_i}`.
    pub fn hermitian_spanning_set(&self) -> Vec<ComplexMatrix> {
        self.elements()
            .iter()
            .flat_map(|b| [b.hermitian_part(), b.anti_hermitian_part()])
            .filter(|h| h.fro_norm() > 1e-14)
            .collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> ComplexMatrix {
        random_element(self, rng)
    }
}

/// Generic self-adjoint element of the span of `basis` with real Gaussian
/// coefficients on the Hermitian parts.
pub(crate) fn generic_self_adjoint(basis: &HsBasis, rng: &mut impl Rng) -> ComplexMatrix {
    let (r, c) = basis.elements().first().map_or((0, 0), |e| e.shape());
    let mut h = ComplexMatrix::zeros(r, c);
    for b in basis.iter() {
        let a = crate::rng::gaussian_real(rng);
        let s = crate::rng::gaussian_real(rng);
        h.axpy(C64::new(a, 0.0), &b.hermitian_part());
        h.axpy(C64::new(s, 0.0), &b.anti_hermitian_part());
    }
    h.hermitian_part()
}

/// Groups ascending eigenvalues into clusters separated by gaps above `gap`.
pub(crate) fn cluster_indices(values: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(cur) if v - values[*cur.last().unwrap()] <= gap => cur.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_algebras_are_closed() {
        for m in [VNAlgebra::scalars(3), VNAlgebra::full(3), VNAlgebra::diagonal(4)] {
            assert!(m.closure_defect() < 1e-12);
            assert!(m.orthonormality_defect() < 1e-12);
        }
        assert_eq!(VNAlgebra::full(3).dim(), 9);
        assert_eq!(VNAlgebra::diagonal(4).dim(), 4);
    }

    #[test]
    fn unit_is_first() {
        let m = VNAlgebra::full(2);
        let u = &m.elements()[0];
        assert!((u - &ComplexMatrix::identity(2).scale_real(0.5f64.sqrt())).fro_norm() < 1e-14);
    }

    #[test]
    fn rejects_outsiders() {
        let m = VNAlgebra::diagonal(2);
        let x = ComplexMatrix::unit(2, 0, 1);
        assert!(matches!(
            m.require_member(&x, &Tolerances::default()),
            Err(Error::NotInAlgebra { .. })
        ));
    }

    #[test]
    fn clustering() {
        let c = cluster_indices(&[0.0, 1e-9, 1.0, 1.0, 3.0], 1e-6);
        assert_eq!(c, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
