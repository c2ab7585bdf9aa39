//! Seeded random generators for test corpora and witness searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{herm_eig, ComplexMatrix, HsBasis, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream from a base seed and a label.
pub fn derived(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (`E|z|² = 1`).
pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_real(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    gaussian_matrix(d, d, rng).hermitian_part()
}

/// Haar-distributed unitary: Gram–Schmidt of a complex Gaussian matrix.
pub fn haar_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(d, d, rng);
        let cols = HsBasis::orthonormalize(g.columns().iter(), 1e-10);
        if cols.len() == d {
            return ComplexMatrix::from_columns(cols.elements());
        }
    }
}

/// Positive matrix with eigenvalues drawn uniformly from `[lo, hi]` and a
/// Haar-random eigenbasis.
pub fn random_positive(d: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> ComplexMatrix {
    let u = haar_unitary(d, rng);
    let eig: Vec<f64> = (0..d).map(|_| rng.random_range(lo..=hi)).collect();
    u.matmul(&ComplexMatrix::from_real_diag(&eig)).matmul(&u.adjoint())
}

/// Faithful density matrix (trace one, spectrum bounded away from zero).
pub fn random_density(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let p = random_positive(d, 0.2, 1.0, rng);
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}

/// Unit vector in `ℂ^d`.
pub fn random_unit_vector(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let v = gaussian_matrix(d, 1, rng);
    let n = v.norm();
    v.scale_real(1.0 / n)
}

/// Smallest eigenvalue, for sanity checks in generators.
pub fn min_eig(a: &ComplexMatrix) -> f64 {
    herm_eig(a).map(|e| e.min()).unwrap_or(f64::NAN)
}
