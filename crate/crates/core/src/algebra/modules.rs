//! Minimal generating sets for `M`-submodules of `ℂ^d`.
//!
//! In a block `W(ℂ^d) = ℂⁿ ⊗ ℂᵐ` a vector is an `n×m` matrix `Z` and `x ∈ M`
//! acts as `Z ↦ XZ`, so the submodule generated by a family is the set of
//! matrices whose rows lie in the joint row space `R`. One vector contributes
//! at most `n` rows; `⌈dim R / n⌉` vectors are needed and suffice.

use serde::{Deserialize, Serialize};

use super::cyclic::orbit_matrix;
use super::VNAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, LeastSquaresSolver, Tolerances, C64};
use crate::rng::{derived, gaussian};

const MODULE_SEED: u64 = 0x3D_07E5;

/// Dimension up to which minimality is also checked by search.
pub const SEARCH_MAX_DIM: usize = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleGenerators {
    pub generators: Vec<ComplexMatrix>,
    /// `(dim R_ι, n_ι)` per block.
    pub block_ranks: Vec<(usize, usize)>,
    /// Largest relative residual of an input vector against `Σ_j M ζ_j`.
    pub membership_residual: f64,
    /// `Some(true)` when every randomized attempt with fewer vectors failed.
    pub minimality_search: Option<bool>,
}

impl ModuleGenerators {
    pub fn count(&self) -> usize {
        self.generators.len()
    }
}

/// Columns spanning `Σ_j M ζ_j`.
fn module_span(m: &VNAlgebra, vectors: &[ComplexMatrix]) -> ComplexMatrix {
    let cols: Vec<ComplexMatrix> = vectors.iter().flat_map(|v| orbit_matrix(m, v).columns()).collect();
    ComplexMatrix::from_columns(&cols)
}

fn span_rank(m: &VNAlgebra, vectors: &[ComplexMatrix], tol: &Tolerances) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    svd(&module_span(m, vectors)).rank(tol.rank_tol)
}

/// Relative residual of each `x` against `span(columns)`.
fn worst_relative_residual(columns: &ComplexMatrix, xs: &[ComplexMatrix], tol: &Tolerances) -> f64 {
    let solver = LeastSquaresSolver::new(columns.clone(), tol.rank_tol);
    xs.iter()
        .filter(|x| x.norm() > 0.0)
        .map(|x| solver.solve(x).residual / x.norm())
        .fold(0.0, f64::max)
}

/// Generating set of minimal size for the module `Σ_k M ξ_k`.
pub fn module_generators(m: &VNAlgebra, xs: &[ComplexMatrix], tol: &Tolerances) -> Result<ModuleGenerators> {
    let d = m.ambient_dim();
    if let Some(x) = xs.iter().find(|x| x.shape() != (d, 1)) {
        return Err(Error::DimensionMismatch {
            context: "module_generators",
            expected: d,
            found: x.rows(),
        });
    }
    let s = m.structure_or_compute(tol)?;
    let scale = xs.iter().map(|x| x.norm()).fold(0.0, f64::max);

    let mut rows_per_block = Vec::with_capacity(s.blocks.len());
    let mut block_ranks = Vec::with_capacity(s.blocks.len());
    for b in &s.blocks {
        // Stack the rows of every Z_k; their span is R_ι.
        let mut stacked = ComplexMatrix::zeros(xs.len() * b.n, b.m);
        for (k, x) in xs.iter().enumerate() {
            let wx = b.w.matmul(x);
            for i in 0..b.n {
                for beta in 0..b.m {
                    stacked[(k * b.n + i, beta)] = wx[(i * b.m + beta, 0)];
                }
            }
        }
        // Row space of `stacked` = column space of its adjoint.
        let basis: Vec<ComplexMatrix> = if xs.is_empty() {
            Vec::new()
        } else {
            let sv = svd(&stacked.adjoint());
            let rank = sv.rank_scaled(tol.rank_tol, scale);
            (0..rank).map(|k| sv.u.col(k)).collect()
        };
        block_ranks.push((basis.len(), b.n));
        rows_per_block.push(basis);
    }
    let count = s
        .blocks
        .iter()
        .zip(&rows_per_block)
        .map(|(b, r)| r.len().div_ceil(b.n))
        .max()
        .unwrap_or(0);

    let mut generators = Vec::with_capacity(count);
    for j in 0..count {
        let mut zeta = ComplexMatrix::zeros(d, 1);
        for (b, rows) in s.blocks.iter().zip(&rows_per_block) {
            let mut z = ComplexMatrix::zeros(b.n * b.m, 1);
            for i in 0..b.n {
                if let Some(r) = rows.get(j * b.n + i) {
                    // row i of Z is rᵀ as a row vector in ℂᵐ
                    for beta in 0..b.m {
                        z[(i * b.m + beta, 0)] = r[(beta, 0)].conj();
                    }
                }
            }
            zeta += &b.w.adjoint().matmul(&z);
        }
        generators.push(zeta);
    }

    let membership_residual = if xs.is_empty() || generators.is_empty() {
        if xs.iter().any(|x| x.norm() > 0.0) {
            1.0
        } else {
            0.0
        }
    } else {
        worst_relative_residual(&module_span(m, &generators), xs, tol)
    };

    let minimality_search = (d <= SEARCH_MAX_DIM && count > 0).then(|| fewer_never_generate(m, xs, count, tol));

    Ok(ModuleGenerators {
        generators,
        block_ranks,
        membership_residual,
        minimality_search,
    })
}

/// Draws random `(count − 1)`-tuples from the module and checks that none
/// spans it. Generating tuples form a Zariski-open set, so if any existed a
/// random tuple would generate almost surely.
fn fewer_never_generate(m: &VNAlgebra, xs: &[ComplexMatrix], count: usize, tol: &Tolerances) -> bool {
    let full = module_span(m, xs);
    let target = svd(&full).rank(tol.rank_tol);
    let c = count - 1;
    if c == 0 {
        return target > 0;
    }
    let mut rng = derived(MODULE_SEED, m.ambient_dim() as u64);
    (0..4 * tol.retry_seeds).all(|_| {
        let tuple: Vec<ComplexMatrix> = (0..c)
            .map(|_| {
                let coeffs: Vec<C64> = (0..full.cols()).map(|_| gaussian(&mut rng)).collect();
                full.matmul(&ComplexMatrix::column(&coeffs))
            })
            .collect();
        span_rank(m, &tuple, tol) < target
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};
    use crate::rng::{gaussian_matrix, seeded};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn empty_input() {
        let g = module_generators(&VNAlgebra::full(3), &[], &tol()).unwrap();
        assert_eq!(g.count(), 0);
    }

    #[test]
    fn full_algebra_needs_one() {
        let mut rng = seeded(1);
        let xs: Vec<ComplexMatrix> = (0..3).map(|_| gaussian_matrix(4, 1, &mut rng)).collect();
        let g = module_generators(&VNAlgebra::full(4), &xs, &tol()).unwrap();
        assert_eq!(g.count(), 1);
        assert!(g.membership_residual < 1e-9);
    }

    #[test]
    fn scalars_need_linear_dimension() {
        let mut rng = seeded(2);
        let xs: Vec<ComplexMatrix> = (0..3).map(|_| gaussian_matrix(4, 1, &mut rng)).collect();
        let g = module_generators(&VNAlgebra::scalars(4), &xs, &tol()).unwrap();
        assert_eq!(g.count(), 3);
        assert!(g.membership_residual < 1e-9);
        assert_eq!(g.minimality_search, Some(true));
    }

    #[test]
    fn amplified_block() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 3)]).unwrap(), 8).unwrap();
        let mut rng = seeded(3);
        let xs: Vec<ComplexMatrix> = (0..3).map(|_| gaussian_matrix(6, 1, &mut rng)).collect();
        let g = module_generators(&m, &xs, &tol()).unwrap();
        // R has dimension 3, two rows per vector
        assert_eq!(g.block_ranks, vec![(3, 2)]);
        assert_eq!(g.count(), 2);
        assert!(g.membership_residual < 1e-9);
        assert_eq!(g.minimality_search, Some(true));
    }
}
