//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `A = V · diag(λ) · V*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V · diag(f(λ)) · V*`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &w) in fl.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, k: usize) -> ComplexMatrix {
        self.vectors.col(k)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Rejects inputs with `‖A − A*‖_F > tol · max(‖A‖_F, 1)`; the Hermitian part
/// is decomposed so that tiny defects are symmetrized away.
pub fn herm_eig_checked(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            context: "herm_eig",
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let defect = a.hermitian_defect();
    let bound = tol * a.fro_norm().max(1.0);
    if defect > bound {
        return Err(Error::NotHermitian { defect, bound });
    }
    Ok(jacobi(a.hermitian_part()))
}

/// [`herm_eig_checked`] at the default assertion tolerance.
pub fn herm_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    herm_eig_checked(a, super::Tolerances::default().assert_tol)
}

fn jacobi(mut a: ComplexMatrix) -> HermitianEigen {
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.fro_norm();
    if n > 1 && scale > 0.0 {
        let stop = f64::EPSILON * scale;
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, stop / n as f64);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigen { values, vectors }
}

/// Annihilates `a[(p, q)]` with the unitary `U = diag(1, e^{-iφ}) · R(θ)`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= skip {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let u00 = C64::new(c, 0.0);
    let u01 = C64::new(s, 0.0);
    let u10 = -phase.conj() * s;
    let u11 = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
}

/// Operator norm (largest singular value).
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let gram = if a.rows() <= a.cols() {
        a.matmul(&a.adjoint())
    } else {
        a.adjoint().matmul(a)
    };
    jacobi(gram.hermitian_part()).max().max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ONE;
    use crate::rng::{random_hermitian, seeded};

    #[test]
    fn diagonal_input_sorts_and_permutes() {
        let e = herm_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
        assert_eq!(e.vectors[(1, 0)].norm(), 1.0);
        assert_eq!(e.vectors[(0, 1)].norm(), 1.0);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = herm_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = seeded(11);
        for d in [2, 5, 9, 16] {
            let a = random_hermitian(d, &mut rng);
            let e = herm_eig(&a).unwrap();
            let recon = (&e.reconstruct() - &a).fro_norm();
            assert!(recon <= 1e-10 * op_norm(&a), "d={d} residual {recon}");
            assert!(e.vectors.is_unitary(1e-10));
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::unit(2, 0, 1);
        assert!(matches!(herm_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&ComplexMatrix::from_real_diag(&[1.0, -3.0])) - 3.0).abs() < 1e-14);
        let u = ComplexMatrix::column(&[C64::new(1.0, 1.0), C64::new(0.0, 2.0)]);
        let v = ComplexMatrix::column(&[C64::new(3.0, 0.0), ONE, C64::new(0.0, -1.0)]);
        let r1 = ComplexMatrix::outer(&u, &v);
        assert!((op_norm(&r1) - u.norm() * v.norm()).abs() < 1e-12);
    }

    #[test]
    fn op_norm_gram_identity() {
        let mut rng = seeded(5);
        let a = crate::rng::gaussian_matrix(6, 4, &mut rng);
        let n = op_norm(&a);
        let g = op_norm(&a.adjoint().matmul(&a));
        assert!((n * n - g).abs() <= 1e-10 * g);
    }
}
