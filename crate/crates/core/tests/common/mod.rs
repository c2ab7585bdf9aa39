//! Dense reference routines from nalgebra, independent of the crate's own
//! eigensolver and SVD.
#![allow(dead_code)]

use nalgebra::DMatrix;
use vnkit::{ComplexMatrix, C64};

pub fn to_dense(a: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

pub fn from_dense(a: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

pub fn op_norm(a: &ComplexMatrix) -> f64 {
    to_dense(a).singular_values().max()
}

/// Ascending eigenvalues of the Hermitian part.
pub fn eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let h = to_dense(&a.hermitian_part());
    let mut v: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn inverse(a: &ComplexMatrix) -> ComplexMatrix {
    from_dense(&to_dense(a).try_inverse().expect("invertible"))
}

/// Singular values above `rel · σ_max`.
pub fn rank(a: &ComplexMatrix, rel: f64) -> usize {
    let s = to_dense(a).singular_values();
    let top = s.max();
    s.iter().filter(|&&x| x > rel * top).count()
}

/// Columns `vec(B_i)` side by side.
pub fn stacked(items: &[ComplexMatrix]) -> ComplexMatrix {
    let cols: Vec<ComplexMatrix> = items.iter().map(|x| x.vectorize()).collect();
    ComplexMatrix::from_columns(&cols)
}

/// `dim span(items)` from the reference SVD.
pub fn span_dim(items: &[ComplexMatrix]) -> usize {
    rank(&stacked(items), 1e-9)
}
