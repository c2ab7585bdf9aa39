//! Cyclic and separating vectors.

use serde::{Deserialize, Serialize};

use super::VNAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, Tolerances};
use crate::rng::{derived, random_unit_vector};

const CYCLIC_SEED: u64 = 0xC1C11C;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CyclicReport {
    pub has_cyclic: bool,
    pub has_separating: bool,
    pub cyclic_witness: Option<ComplexMatrix>,
    pub separating_witness: Option<ComplexMatrix>,
    /// `dim span(M ξ)` for the last vector tried.
    pub orbit_rank: usize,
    pub blocks: Vec<(usize, usize)>,
}

/// `[B_1 ξ | … | B_N ξ]`
pub fn orbit_matrix(m: &VNAlgebra, xi: &ComplexMatrix) -> ComplexMatrix {
    let cols: Vec<ComplexMatrix> = m.elements().iter().map(|b| b.matmul(xi)).collect();
    ComplexMatrix::from_columns(&cols)
}

/// `dim span(M ξ)`. Its kernel is `{x ∈ M : xξ = 0}`, so `ξ` is separating
/// exactly when the rank equals `dim M`.
pub fn orbit_rank(m: &VNAlgebra, xi: &ComplexMatrix, tol: &Tolerances) -> usize {
    svd(&orbit_matrix(m, xi)).rank(tol.rank_tol)
}

/// Structural verdicts from the block shape, with random witnesses validated
/// by rank.
pub fn cyclic_analysis(m: &VNAlgebra, tol: &Tolerances) -> Result<CyclicReport> {
    let s = m.structure_or_compute(tol)?;
    let blocks = s.shape();
    let has_cyclic = blocks.iter().all(|&(n, mult)| mult <= n);
    let has_separating = blocks.iter().all(|&(n, mult)| n <= mult);
    let d = m.ambient_dim();
    let mut rng = derived(CYCLIC_SEED, d as u64);
    let mut cyclic_witness = None;
    let mut separating_witness = None;
    let mut rank = 0;
    for _ in 0..tol.retry_seeds {
        let xi = random_unit_vector(d, &mut rng);
        rank = orbit_rank(m, &xi, tol);
        if has_cyclic && cyclic_witness.is_none() && rank == d {
            cyclic_witness = Some(xi.clone());
        }
        if has_separating && separating_witness.is_none() && rank == m.dim() {
            separating_witness = Some(xi);
        }
        if cyclic_witness.is_some() == has_cyclic && separating_witness.is_some() == has_separating {
            break;
        }
    }
    if cyclic_witness.is_some() != has_cyclic || separating_witness.is_some() != has_separating {
        return Err(Error::WitnessSearchFailed {
            attempts: tol.retry_seeds,
            detail: format!("orbit rank {rank} for d = {d}, dim M = {}", m.dim()),
        });
    }
    Ok(CyclicReport {
        has_cyclic,
        has_separating,
        cyclic_witness,
        separating_witness,
        orbit_rank: rank,
        blocks,
    })
}
