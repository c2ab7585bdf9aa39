//! Central splitting into cyclic and separating parts, intertwining
//! residuals, and decomposition of commutant states into vector functionals.

use serde::{Deserialize, Serialize};

use super::StateDensity;
use crate::algebra::{orbit_rank, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, ComplexMatrix, Tolerances, C64, ZERO};
use crate::rng::{derived, random_unit_vector};

const SPLIT_SEED: u64 = 0x5E9A;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitResult {
    /// Central projection onto the blocks with `m ≤ n`.
    pub p: ComplexMatrix,
    pub cyclic_blocks: Vec<(usize, usize)>,
    pub separating_blocks: Vec<(usize, usize)>,
    /// `pξ` is cyclic for `M_p` on `pℂ^d`.
    pub cyclic_witness: Option<ComplexMatrix>,
    /// `(1−p)ξ` is separating for `M_{1−p}`.
    pub separating_witness: Option<ComplexMatrix>,
    pub cyclic_orbit_rank: usize,
    pub separating_orbit_rank: usize,
}

/// Balanced blocks go to the cyclic side.
pub fn cyclic_separating_split(m: &VNAlgebra, tol: &Tolerances) -> Result<SplitResult> {
    let s = m.structure_or_compute(tol)?;
    let d = m.ambient_dim();
    let mut p = ComplexMatrix::zeros(d, d);
    let mut cyclic_blocks = Vec::new();
    let mut separating_blocks = Vec::new();
    let mut cyclic_rank = 0;
    let mut separating_dim = 0;
    for b in &s.blocks {
        if b.m <= b.n {
            p += &b.projection;
            cyclic_blocks.push((b.n, b.m));
            cyclic_rank += b.rank();
        } else {
            separating_blocks.push((b.n, b.m));
            separating_dim += b.n * b.n;
        }
    }
    let q = &ComplexMatrix::identity(d) - &p;
    let mut rng = derived(SPLIT_SEED, d as u64);
    for _ in 0..tol.retry_seeds {
        let xi = random_unit_vector(d, &mut rng);
        let (pc, qc) = (p.matmul(&xi), q.matmul(&xi));
        let (rc, rs) = (orbit_rank(m, &pc, tol), orbit_rank(m, &qc, tol));
        if rc == cyclic_rank && rs == separating_dim {
            return Ok(SplitResult {
                p,
                cyclic_witness: (!cyclic_blocks.is_empty()).then_some(pc),
                separating_witness: (!separating_blocks.is_empty()).then_some(qc),
                cyclic_blocks,
                separating_blocks,
                cyclic_orbit_rank: rc,
                separating_orbit_rank: rs,
            });
        }
    }
    Err(Error::WitnessSearchFailed {
        attempts: tol.retry_seeds,
        detail: format!("cyclic rank {cyclic_rank}, separating dimension {separating_dim}"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntertwiningReport {
    /// `max ‖T₁x − Φ(x)T₂‖_F` over `x ∈ {B_i, iB_i}`.
    pub residual: f64,
    /// `‖P T₂‖` with `P` the projection onto the complement of `⋂ ker Φ(x)`.
    pub reduced_norm: f64,
    pub certificates: CertificateSet,
}

/// Residuals of `T₁x = Φ(x)T₂` for a real-linear `Φ` given on `B_i` and `iB_i`.
pub fn verify_intertwining(
    m: &VNAlgebra,
    phi_basis: &[ComplexMatrix],
    phi_i_basis: &[ComplexMatrix],
    t1: &ComplexMatrix,
    t2: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<IntertwiningReport> {
    let d = m.ambient_dim();
    let e = t1.rows();
    let mismatch = |context, expected, found| Error::DimensionMismatch { context, expected, found };
    if phi_basis.len() != m.dim() {
        return Err(mismatch("intertwining basis images", m.dim(), phi_basis.len()));
    }
    if phi_i_basis.len() != m.dim() {
        return Err(mismatch("intertwining i·basis images", m.dim(), phi_i_basis.len()));
    }
    if t1.cols() != d {
        return Err(mismatch("T1 columns", d, t1.cols()));
    }
    if t2.shape() != (e, d) {
        return Err(mismatch("T2 shape", e, t2.rows()));
    }
    if let Some(bad) = phi_basis.iter().chain(phi_i_basis).find(|f| f.shape() != (e, e)) {
        return Err(mismatch("Φ image", e, bad.rows()));
    }
    let mut residual: f64 = 0.0;
    let mut gram = ComplexMatrix::zeros(e, e);
    for ((b, f), fi) in m.elements().iter().zip(phi_basis).zip(phi_i_basis) {
        let ib = b.scale(crate::linalg::I);
        residual = residual.max((&t1.matmul(b) - &f.matmul(t2)).fro_norm());
        residual = residual.max((&t1.matmul(&ib) - &fi.matmul(t2)).fro_norm());
        gram += &f.adjoint().matmul(f);
        gram += &fi.adjoint().matmul(fi);
    }
    let g = herm_eig(&gram.hermitian_part())?;
    let cut = tol.rank_tol * g.max().max(1.0);
    let proj = g.apply(|l| if l > cut { 1.0 } else { 0.0 });
    let reduced_norm = op_norm(&proj.matmul(t2));
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::INTERTWINING_RESIDUAL, residual, tol.assert_tol, 0.0);
    Ok(IntertwiningReport {
        residual,
        reduced_norm,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorDecomposition {
    pub vectors: Vec<ComplexMatrix>,
    /// `rank σ_ι` per block.
    pub block_ranks: Vec<usize>,
    /// `max |Σ_j (x′ζ_j | ζ_j) − ω′(x′)|` over the commutant basis.
    pub residual: f64,
    pub certificates: CertificateSet,
}

impl VectorDecomposition {
    pub fn count(&self) -> usize {
        self.vectors.len()
    }
}

/// Vectors `ζ_j` with `ω′ = Σ_j ω_{ζ_j}` on `M′`, where `ω′(x′) = tr(ρ′x′)`.
///
/// On block `ι` the functional reduces to `Y ↦ tr(σ_ι Y)` with
/// `σ_ι = tr_n(W ρ′ W*)`; each vector carries up to `n_ι` of its
/// eigen-terms, one per factor index.
pub fn vector_functional_decomposition(
    m: &VNAlgebra,
    omega_prime: &StateDensity,
    tol: &Tolerances,
) -> Result<VectorDecomposition> {
    let d = m.ambient_dim();
    if omega_prime.dim() != d {
        return Err(Error::DimensionMismatch {
            context: "commutant functional",
            expected: d,
            found: omega_prime.dim(),
        });
    }
    let s = m.structure_or_compute(tol)?;
    let rho = omega_prime.rho();
    let mut per_block = Vec::with_capacity(s.blocks.len());
    for b in &s.blocks {
        let sigma = crate::algebra::partial_trace_first(&b.compress(rho), b.n, b.m).hermitian_part();
        let e = herm_eig(&sigma)?;
        let cut = tol.rank_tol * e.max().max(f64::MIN_POSITIVE);
        let terms: Vec<ComplexMatrix> = (0..b.m)
            .filter(|&k| e.values[k] > cut)
            .map(|k| e.vector(k).scale_real(e.values[k].sqrt()))
            .collect();
        per_block.push(terms);
    }
    let count = s
        .blocks
        .iter()
        .zip(&per_block)
        .map(|(b, t)| t.len().div_ceil(b.n))
        .max()
        .unwrap_or(0);
    let mut vectors = Vec::with_capacity(count);
    for j in 0..count {
        let mut zeta = ComplexMatrix::zeros(d, 1);
        for (b, terms) in s.blocks.iter().zip(&per_block) {
            let mut local = vec![ZERO; b.n * b.m];
            for (i, z) in terms.iter().skip(j * b.n).take(b.n).enumerate() {
                for beta in 0..b.m {
                    local[i * b.m + beta] = z[(beta, 0)];
                }
            }
            zeta += &b.w.adjoint().matmul(&ComplexMatrix::column(&local));
        }
        vectors.push(zeta);
    }

    let mut residual: f64 = 0.0;
    for x in s.commutant_basis().iter() {
        let sum: C64 = vectors.iter().map(|z| x.matmul(z).vdot(z)).sum();
        residual = residual.max((sum - omega_prime.eval(x)).norm());
    }
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::VECTOR_FUNCTIONAL_RESIDUAL, residual, tol.assert_tol, 0.0);
    Ok(VectorDecomposition {
        vectors,
        block_ranks: per_block.iter().map(Vec::len).collect(),
        residual,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{commutant, random_algebra, random_element, BlockSpec};
    use crate::rng::{random_density, seeded};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn balanced_is_all_cyclic() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2), (1, 1)]).unwrap(), 1).unwrap();
        let r = cyclic_separating_split(&m, &tol()).unwrap();
        assert!((&r.p - &ComplexMatrix::identity(5)).fro_norm() < 1e-10);
        assert!(r.separating_witness.is_none());
        assert_eq!(r.cyclic_orbit_rank, 5);
    }

    #[test]
    fn mixed_blocks_split_by_multiplicity() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 3), (3, 1)]).unwrap(), 2).unwrap();
        let r = cyclic_separating_split(&m, &tol()).unwrap();
        assert_eq!(r.cyclic_blocks, vec![(3, 1)]);
        assert_eq!(r.separating_blocks, vec![(2, 3)]);
        assert!((r.p.trace().re - 3.0).abs() < 1e-10);
        assert_eq!((r.cyclic_orbit_rank, r.separating_orbit_rank), (3, 4));
    }

    #[test]
    fn scalars_with_multiplicity_are_separating() {
        let r = cyclic_separating_split(&VNAlgebra::scalars(2), &tol()).unwrap();
        assert!(r.p.fro_norm() < 1e-12);
        assert_eq!(r.separating_orbit_rank, 1);
    }

    #[test]
    fn commutant_intertwiners() {
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2)]).unwrap(), 3).unwrap();
        let mc = commutant(&m, &tol()).unwrap();
        let mut rng = seeded(5);
        let t = random_element(&mc, &mut rng);
        let phi: Vec<ComplexMatrix> = m.elements().to_vec();
        let phi_i: Vec<ComplexMatrix> = phi.iter().map(|x| x.scale(crate::linalg::I)).collect();
        let r = verify_intertwining(&m, &phi, &phi_i, &t, &t, &tol()).unwrap();
        assert!(r.residual < 1e-12);
        let other = random_element(&m, &mut rng);
        let r = verify_intertwining(&m, &phi, &phi_i, &(&t + &other), &t, &tol()).unwrap();
        assert!(r.residual > 1e-3);
        assert!(!r.certificates.all_pass());
    }

    #[test]
    fn vector_functional_counts() {
        let mut rng = seeded(7);
        let zeta = random_unit_vector(4, &mut rng);
        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 2)]).unwrap(), 4).unwrap();
        let v = vector_functional_decomposition(&m, &StateDensity::vector(&zeta, &tol()).unwrap(), &tol()).unwrap();
        assert_eq!(v.count(), 1);
        assert!(v.certificates.all_pass());

        let rho = ComplexMatrix::from_real_diag(&[0.3, 0.7]);
        let v = vector_functional_decomposition(&VNAlgebra::scalars(2), &StateDensity::new(rho, &tol()).unwrap(), &tol())
            .unwrap();
        assert_eq!(v.count(), 2);
        assert!(v.residual < 1e-12);

        let phi = StateDensity::new(random_density(4, &mut rng), &tol()).unwrap();
        let v = vector_functional_decomposition(&m, &phi, &tol()).unwrap();
        assert_eq!(v.count(), 1);
        assert!(v.residual < 1e-10);
    }
}
