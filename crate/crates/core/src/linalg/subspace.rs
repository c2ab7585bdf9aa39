//! Subspace machinery over the Hilbert–Schmidt inner product: orthonormal
//! bases of operator spaces, projections, nullspaces and least squares.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use super::svd::svd;
use crate::error::{Error, Result};

/// Gauss–Jordan inverse with partial pivoting.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            context: "inverse",
            expected: n,
            found: a.cols(),
        });
    }
    let mut m = a.clone();
    let mut inv = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))
            .unwrap_or(col);
        if m[(pivot, col)].norm() <= 1e-14 * scale {
            return Err(Error::Singular {
                sigma_min: svd(a).min(),
            });
        }
        if pivot != col {
            for j in 0..n {
                let t = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = t;
                let t = inv[(col, j)];
                inv[(col, j)] = inv[(pivot, j)];
                inv[(pivot, j)] = t;
            }
        }
        let p = ONE / m[(col, col)];
        for j in 0..n {
            m[(col, j)] *= p;
            inv[(col, j)] *= p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = m[(i, col)];
            if f == ZERO {
                continue;
            }
            for j in 0..n {
                let mj = m[(col, j)];
                let ij = inv[(col, j)];
                m[(i, j)] -= f * mj;
                inv[(i, j)] -= f * ij;
            }
        }
    }
    Ok(inv)
}

/// Hilbert–Schmidt-orthonormal list of equally shaped matrices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HsBasis {
    elements: Vec<ComplexMatrix>,
}

impl HsBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps elements that are already orthonormal.
    pub fn from_orthonormal(elements: Vec<ComplexMatrix>) -> Self {
        Self { elements }
    }

    /// Modified Gram–Schmidt with one re-orthogonalization pass, keeping the
    /// input order and dropping dependent elements.
    ///
    /// The cutoff is relative to the largest input norm, so numerically zero
    /// items are dropped rather than normalized into noise.
    pub fn orthonormalize<'a>(items: impl IntoIterator<Item = &'a ComplexMatrix>, rank_tol: f64) -> Self {
        let items: Vec<&ComplexMatrix> = items.into_iter().collect();
        let floor = items.iter().map(|m| m.fro_norm()).fold(0.0, f64::max);
        let mut b = Self::new();
        for m in items {
            b.try_push_with_floor(m, rank_tol, floor);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<ComplexMatrix> {
        self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.elements.iter()
    }

    /// Adds the normalized residual of `m` when it exceeds `rank_tol · ‖m‖`.
    pub fn try_push(&mut self, m: &ComplexMatrix, rank_tol: f64) -> bool {
        self.try_push_with_floor(m, rank_tol, 0.0)
    }

    /// [`HsBasis::try_push`] with cutoff `rank_tol · max(‖m‖, floor)`.
    pub fn try_push_with_floor(&mut self, m: &ComplexMatrix, rank_tol: f64, floor: f64) -> bool {
        let norm = m.fro_norm().max(floor);
        if norm == 0.0 {
            return false;
        }
        let mut r = m.clone();
        for _ in 0..2 {
            for e in &self.elements {
                let c = r.hs_inner(e);
                r.axpy(-c, e);
            }
        }
        let rn = r.fro_norm();
        if rn <= rank_tol * norm {
            return false;
        }
        self.elements.push(r.scale_real(1.0 / rn));
        true
    }

    pub fn coefficients(&self, x: &ComplexMatrix) -> Vec<C64> {
        self.elements.iter().map(|e| x.hs_inner(e)).collect()
    }

    pub fn combine(&self, coeffs: &[C64]) -> ComplexMatrix {
        let (r, c) = self.elements.first().map_or((0, 0), |e| e.shape());
        let mut out = ComplexMatrix::zeros(r, c);
        for (e, &k) in self.elements.iter().zip(coeffs) {
            out.axpy(k, e);
        }
        out
    }

    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.combine(&self.coefficients(x))
    }

    /// `‖x − P(x)‖_F`.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        (x - &self.project(x)).fro_norm()
    }

    /// Largest residual of projecting the elements of `other` onto `self`.
    pub fn containment_residual(&self, other: &HsBasis) -> f64 {
        other.iter().map(|x| self.residual(x)).fold(0.0, f64::max)
    }

    /// Symmetric subspace distance: both containment residuals.
    pub fn mutual_residual(&self, other: &HsBasis) -> f64 {
        self.containment_residual(other).max(other.containment_residual(self))
    }
}

/// Orthonormal basis of `ker(L)` as columns.
///
/// Numerical rank uses the relative threshold `rank_tol · σ_max`, falling back
/// to the absolute `rank_tol` when `L` is numerically zero.
pub fn nullspace(l: &ComplexMatrix, rank_tol: f64) -> ComplexMatrix {
    nullspace_scaled(l, rank_tol, 0.0)
}

/// [`nullspace`] with an externally supplied reference norm for the cutoff.
pub fn nullspace_scaled(l: &ComplexMatrix, rank_tol: f64, scale: f64) -> ComplexMatrix {
    let n = l.cols();
    if l.rows() == 0 {
        return ComplexMatrix::identity(n);
    }
    let s = svd(l);
    let t = s.threshold(rank_tol, scale);
    let keep: Vec<usize> = (0..n).filter(|&k| s.values[k] <= t).collect();
    ComplexMatrix::from_fn(n, keep.len(), |i, k| s.v[(i, keep[k])])
}

#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub coefficients: Vec<C64>,
    pub residual: f64,
}

/// Minimum-norm least-squares solver for a fixed column set.
#[derive(Debug, Clone)]
pub struct LeastSquaresSolver {
    columns: ComplexMatrix,
    u: ComplexMatrix,
    v: ComplexMatrix,
    inv_sigma: Vec<f64>,
}

impl LeastSquaresSolver {
    pub fn new(columns: ComplexMatrix, rank_tol: f64) -> Self {
        let s = svd(&columns);
        let t = s.threshold(rank_tol, 0.0);
        let inv_sigma = s
            .values
            .iter()
            .map(|&x| if x > t { 1.0 / x } else { 0.0 })
            .collect();
        Self {
            columns,
            u: s.u,
            v: s.v,
            inv_sigma,
        }
    }

    pub fn rank(&self) -> usize {
        self.inv_sigma.iter().filter(|&&x| x > 0.0).count()
    }

    pub fn solve(&self, target: &ComplexMatrix) -> LeastSquares {
        let n = self.columns.cols();
        let ut = self.u.adjoint().matmul(target);
        let mut w = ComplexMatrix::zeros(n, 1);
        for k in 0..n {
            w[(k, 0)] = ut[(k, 0)] * self.inv_sigma[k];
        }
        let c = self.v.matmul(&w);
        let fitted = self.columns.matmul(&c);
        LeastSquares {
            residual: (&fitted - target).norm(),
            coefficients: c.into_vec(),
        }
    }
}

/// Coefficients `c` minimizing `‖Σ c_i map(basis_i) − target‖`.
pub fn least_squares_in_subspace(
    basis: &[ComplexMatrix],
    map: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    target: &ComplexMatrix,
    rank_tol: f64,
) -> LeastSquares {
    let images: Vec<ComplexMatrix> = basis.iter().map(|b| map(b).vectorize()).collect();
    if images.is_empty() {
        return LeastSquares {
            coefficients: Vec::new(),
            residual: target.norm(),
        };
    }
    let solver = LeastSquaresSolver::new(ComplexMatrix::from_columns(&images), rank_tol);
    solver.solve(&target.vectorize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{gaussian_matrix, seeded};

    #[test]
    fn inverse_of_random() {
        let mut rng = seeded(9);
        let a = gaussian_matrix(5, 5, &mut rng);
        let inv = inverse(&a).unwrap();
        assert!((&a.matmul(&inv) - &ComplexMatrix::identity(5)).fro_norm() < 1e-10);
        assert!(matches!(inverse(&ComplexMatrix::zeros(2, 2)), Err(Error::Singular { .. })));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&ComplexMatrix::zeros(3, 3), 1e-9).cols(), 3);
        assert_eq!(nullspace(&ComplexMatrix::identity(3), 1e-9).cols(), 0);
        let l = ComplexMatrix::from_fn(2, 2, |_, _| ONE);
        let n = nullspace(&l, 1e-9);
        assert_eq!(n.cols(), 1);
        let v = n.col(0);
        // ∝ (1, −1)/√2 up to phase
        let ratio = v[(1, 0)] / v[(0, 0)];
        assert!((ratio + ONE).norm() < 1e-12);
        assert!((v[(0, 0)].norm() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(l.matmul(&v).norm() < 1e-12);
    }

    #[test]
    fn nullspace_dimension_is_cols_minus_rank() {
        let mut rng = seeded(10);
        let l = gaussian_matrix(7, 3, &mut rng).matmul(&gaussian_matrix(3, 6, &mut rng));
        let n = nullspace(&l, 1e-9);
        assert_eq!(n.cols(), 3);
        assert!(n.unitary_defect() < 1e-12);
        assert!(l.matmul(&n).fro_norm() < 1e-9 * l.fro_norm());
    }

    #[test]
    fn least_squares_in_range_and_orthogonal() {
        let basis: Vec<ComplexMatrix> =
            (0..2).map(|i| ComplexMatrix::basis_vector(3, i)).collect();
        let id = |x: &ComplexMatrix| x.clone();
        let inside = ComplexMatrix::column(&[C64::new(1.0, 2.0), C64::new(-3.0, 0.0), ZERO]);
        let ls = least_squares_in_subspace(&basis, id, &inside, 1e-9);
        assert!(ls.residual <= 1e-9 * inside.norm());
        let outside = ComplexMatrix::basis_vector(3, 2);
        let ls = least_squares_in_subspace(&basis, id, &outside, 1e-9);
        assert!(ls.coefficients.iter().all(|c| c.norm() < 1e-15));
        assert!((ls.residual - 1.0).abs() < 1e-15);
    }

    #[test]
    fn least_squares_matches_normal_equations() {
        let mut rng = seeded(12);
        let basis: Vec<ComplexMatrix> = (0..3).map(|_| gaussian_matrix(6, 1, &mut rng)).collect();
        let target = gaussian_matrix(6, 1, &mut rng);
        let ls = least_squares_in_subspace(&basis, |x| x.clone(), &target, 1e-9);
        let a = ComplexMatrix::from_columns(&basis);
        let ah = a.adjoint();
        let c = inverse(&ah.matmul(&a)).unwrap().matmul(&ah.matmul(&target));
        let normal_res = (&a.matmul(&c) - &target).norm();
        assert!((normal_res - ls.residual).abs() < 1e-10);
    }

    #[test]
    fn hs_basis_drops_dependents() {
        let a = ComplexMatrix::unit(2, 0, 1);
        let b = a.scale(C64::new(0.0, 3.0));
        let c = ComplexMatrix::identity(2);
        let basis = HsBasis::orthonormalize([&a, &b, &c], 1e-9);
        assert_eq!(basis.len(), 2);
        assert!(basis.residual(&b) < 1e-14);
    }
}
