//! Central decomposition `M ≅ ⊕ M_n ⊗ 1_m` with explicit unitaries.

use serde::{Deserialize, Serialize};

use super::{centre, cluster_indices, generic_self_adjoint, VNAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, ComplexMatrix, HsBasis, Tolerances, C64};
use crate::rng::{derived, gaussian, SeededRng};

const STRUCTURE_SEED: u64 = 0x57_AC_70_2E;

/// `Σ_β Q[(i,β),(j,β)]`: traces out the second tensor factor of an
/// `(n·m)×(n·m)` matrix.
pub fn partial_trace_second(q: &ComplexMatrix, n: usize, m: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| (0..m).map(|b| q[(i * m + b, j * m + b)]).sum())
}

/// `Σ_i Q[(i,β),(i,γ)]`: traces out the first tensor factor.
pub fn partial_trace_first(q: &ComplexMatrix, n: usize, m: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m, m, |b, g| (0..n).map(|i| q[(i * m + b, i * m + g)]).sum())
}

/// One factor block: central projection `p`, factor size `n`, multiplicity
/// `m`, and the isometry `W : range(p) → ℂⁿ ⊗ ℂᵐ` stored as an `(n·m)×d`
/// matrix with `W W* = 1` and `W* W = p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub projection: ComplexMatrix,
    pub n: usize,
    pub m: usize,
    pub w: ComplexMatrix,
}

impl Block {
    /// `W x W*`
    pub fn compress(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.w.matmul(x).matmul(&self.w.adjoint())
    }

    /// The `n×n` matrix `X` with `W x W* = X ⊗ 1_m` for `x ∈ M`.
    pub fn factor_component(&self, x: &ComplexMatrix) -> ComplexMatrix {
        partial_trace_second(&self.compress(x), self.n, self.m).scale_real(1.0 / self.m as f64)
    }

    /// The `m×m` matrix `Y` with `W x′ W* = 1_n ⊗ Y` for `x′ ∈ M′`.
    pub fn multiplicity_component(&self, x: &ComplexMatrix) -> ComplexMatrix {
        partial_trace_first(&self.compress(x), self.n, self.m).scale_real(1.0 / self.n as f64)
    }

    /// `W* (X ⊗ 1_m) W`
    pub fn embed_factor(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let k = x.kron(&ComplexMatrix::identity(self.m));
        self.w.adjoint().matmul(&k).matmul(&self.w)
    }

    /// `W* (1_n ⊗ Y) W`
    pub fn embed_multiplicity(&self, y: &ComplexMatrix) -> ComplexMatrix {
        let k = ComplexMatrix::identity(self.n).kron(y);
        self.w.adjoint().matmul(&k).matmul(&self.w)
    }

    /// `W* Q W` for an arbitrary `(n·m)×(n·m)` matrix.
    pub fn embed(&self, q: &ComplexMatrix) -> ComplexMatrix {
        self.w.adjoint().matmul(q).matmul(&self.w)
    }

    /// `‖W x W* − X ⊗ 1_m‖_F`
    pub fn block_form_residual(&self, x: &ComplexMatrix) -> f64 {
        let c = self.compress(x);
        let f = partial_trace_second(&c, self.n, self.m).scale_real(1.0 / self.m as f64);
        (&c - &f.kron(&ComplexMatrix::identity(self.m))).fro_norm()
    }

    /// Matrix unit `e_ij ⊗ 1_m` pulled back to `ℂ^d`.
    pub fn matrix_unit(&self, i: usize, j: usize) -> ComplexMatrix {
        self.embed_factor(&ComplexMatrix::unit(self.n, i, j))
    }

    pub fn minimal_projection(&self) -> ComplexMatrix {
        self.matrix_unit(0, 0)
    }

    pub fn rank(&self) -> usize {
        self.n * self.m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralDecomposition {
    pub blocks: Vec<Block>,
}

impl CentralDecomposition {
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.n, b.m)).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.blocks.iter().map(Block::rank).sum()
    }

    /// `Σ n²`
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.n * b.n).sum()
    }

    /// `Σ m²`
    pub fn commutant_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.m * b.m).sum()
    }

    pub fn centre_dim(&self) -> usize {
        self.blocks.len()
    }

    /// Largest block-form residual over the basis of `m` and all blocks.
    pub fn block_form_residual(&self, m: &VNAlgebra) -> f64 {
        m.elements()
            .iter()
            .flat_map(|x| self.blocks.iter().map(move |b| b.block_form_residual(x)))
            .fold(0.0, f64::max)
    }

    /// `max(‖Σ p − 1‖, max_{ι≠κ} ‖p_ι p_κ‖, max ‖W W* − 1‖)`.
    pub fn partition_defect(&self) -> f64 {
        let d = self.ambient_dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        let mut worst: f64 = 0.0;
        for (i, b) in self.blocks.iter().enumerate() {
            sum += &b.projection;
            worst = worst.max(b.w.matmul(&b.w.adjoint()).unitary_defect());
            worst = worst.max((&b.w.adjoint().matmul(&b.w) - &b.projection).fro_norm());
            for c in &self.blocks[i + 1..] {
                worst = worst.max(b.projection.matmul(&c.projection).fro_norm());
            }
        }
        worst.max((&sum - &ComplexMatrix::identity(d)).fro_norm())
    }

    /// Per-block factor components of `x`.
    pub fn factor_components(&self, x: &ComplexMatrix) -> Vec<ComplexMatrix> {
        self.blocks.iter().map(|b| b.factor_component(x)).collect()
    }

    /// `Σ_ι W_ι* (X_ι ⊗ 1) W_ι`
    pub fn assemble(&self, components: &[ComplexMatrix]) -> ComplexMatrix {
        let d = self.ambient_dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for (b, x) in self.blocks.iter().zip(components) {
            out += &b.embed_factor(x);
        }
        out
    }

    /// Orthonormal basis of `M′` read off the decomposition: `1_n ⊗ e_βγ / √n`.
    pub fn commutant_basis(&self) -> HsBasis {
        let mut items = Vec::new();
        for b in &self.blocks {
            let s = 1.0 / (b.n as f64).sqrt();
            for beta in 0..b.m {
                for gamma in 0..b.m {
                    items.push(b.embed_multiplicity(&ComplexMatrix::unit(b.m, beta, gamma)).scale_real(s));
                }
            }
        }
        HsBasis::from_orthonormal(items)
    }
}

/// Orthonormal basis of the range of a projection, as columns.
fn range_basis(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = herm_eig(p)?;
    let keep: Vec<usize> = (0..e.values.len()).filter(|&k| e.values[k] > 0.5).collect();
    Ok(ComplexMatrix::from_fn(p.rows(), keep.len(), |i, k| e.vectors[(i, keep[k])]))
}

fn compressed_basis(alg: &HsBasis, e: &ComplexMatrix, tol: &Tolerances) -> HsBasis {
    let items: Vec<ComplexMatrix> = alg.iter().map(|b| e.matmul(b).matmul(e)).collect();
    HsBasis::orthonormalize(items.iter(), tol.rank_tol)
}

/// Minimal projection of the algebra `alg` below the projection `e ∈ alg`,
/// found by repeatedly splitting along an eigenspace of a generic element of
/// `e·alg·e`.
fn minimal_projection_below(
    alg: &HsBasis,
    mut e: ComplexMatrix,
    rng: &mut SeededRng,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    loop {
        let reduced = compressed_basis(alg, &e, tol);
        if reduced.len() <= 1 {
            return Ok(e);
        }
        let q = range_basis(&e)?;
        let mut split = None;
        for _ in 0..tol.retry_seeds {
            let h = generic_self_adjoint(&reduced, rng);
            let hc = q.adjoint().matmul(&h).matmul(&q);
            let eig = herm_eig(&hc.hermitian_part())?;
            let gap = 1e3 * tol.rank_tol * op_norm(&hc).max(1e-300);
            let clusters = cluster_indices(&eig.values, gap);
            if clusters.len() >= 2 {
                let cols: Vec<ComplexMatrix> = clusters[0].iter().map(|&k| q.matmul(&eig.vector(k))).collect();
                let v = ComplexMatrix::from_columns(&cols);
                split = Some(v.matmul(&v.adjoint()));
                break;
            }
        }
        e = split.ok_or_else(|| Error::Degenerate {
            attempts: tol.retry_seeds,
            detail: format!("no splitting element in a reduced algebra of dimension {}", reduced.len()),
        })?;
    }
}

/// Partial isometry `v ∈ alg` with `v*v = f₁` and `vv* = fᵢ`, for minimal
/// projections with the same central support.
fn partial_isometry(
    alg: &HsBasis,
    fi: &ComplexMatrix,
    f1: &ComplexMatrix,
    m: usize,
    rng: &mut SeededRng,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    for _ in 0..tol.retry_seeds {
        let coeffs: Vec<C64> = (0..alg.len()).map(|_| gaussian(rng)).collect();
        let h = alg.combine(&coeffs);
        let y = fi.matmul(&h).matmul(f1);
        let s = y.fro_norm().powi(2) / m as f64;
        if s <= 1e-6 * h.fro_norm().powi(2) {
            continue;
        }
        let v = y.scale_real(1.0 / s.sqrt());
        if (&v.adjoint().matmul(&v) - f1).fro_norm() <= tol.assert_tol.sqrt() {
            return Ok(v);
        }
    }
    Err(Error::WitnessSearchFailed {
        attempts: tol.retry_seeds,
        detail: "partial isometry between minimal projections".into(),
    })
}

/// Decomposes the block of `M` supported on the orthonormal columns `q`.
fn decompose_block(m: &VNAlgebra, q: &ComplexMatrix, rng: &mut SeededRng, tol: &Tolerances) -> Result<Block> {
    let r = q.cols();
    let qa = q.adjoint();
    let compressed: Vec<ComplexMatrix> = m.elements().iter().map(|b| qa.matmul(b).matmul(q)).collect();
    let alg = HsBasis::orthonormalize(compressed.iter(), tol.rank_tol);
    let dim = alg.len();
    let n = (dim as f64).sqrt().round() as usize;
    if n * n != dim || n == 0 || !r.is_multiple_of(n) {
        return Err(Error::Structural(format!(
            "reduced algebra of dimension {dim} on rank {r} is not a type I factor block"
        )));
    }
    let mult = r / n;

    let mut projections: Vec<ComplexMatrix> = Vec::with_capacity(n);
    let mut remaining = ComplexMatrix::identity(r);
    for _ in 0..n {
        let f = minimal_projection_below(&alg, remaining.clone(), rng, tol)?;
        let rank = f.trace().re.round() as usize;
        if rank != mult {
            return Err(Error::Structural(format!(
                "minimal projection of rank {rank}, expected multiplicity {mult}"
            )));
        }
        remaining -= &f;
        projections.push(f);
    }
    if remaining.fro_norm() > tol.assert_tol.sqrt() {
        return Err(Error::Structural("minimal projections do not exhaust the block".into()));
    }

    let f1 = projections[0].clone();
    let u = range_basis(&f1)?;
    let mut rows: Vec<ComplexMatrix> = Vec::with_capacity(r);
    for (i, fi) in projections.iter().enumerate() {
        let v = if i == 0 { f1.clone() } else { partial_isometry(&alg, fi, &f1, mult, rng, tol)? };
        let vu = v.matmul(&u);
        for beta in 0..mult {
            rows.push(vu.col(beta));
        }
    }
    // Rows of W_c are (v_i u_β)*: W_c = [v_i u_β]*.
    let wc = ComplexMatrix::from_columns(&rows).adjoint();
    let w = wc.matmul(&qa);
    Ok(Block {
        projection: q.matmul(&qa),
        n,
        m: mult,
        w,
    })
}

/// Central decomposition of `M`.
///
/// Minimal central projections come from the eigenspaces of one generic
/// self-adjoint central element; inside each block, minimal projections and
/// partial isometries between them give matrix units, and an orthonormal
/// basis of the range of the first minimal projection gives the multiplicity
/// factor. Blocks are sorted by `(n, m)`.
pub fn structure(m: &VNAlgebra, tol: &Tolerances) -> Result<CentralDecomposition> {
    let d = m.ambient_dim();
    let z = centre(m, tol)?;
    let k = z.len();
    let mut rng = derived(STRUCTURE_SEED, d as u64 * 131 + m.dim() as u64);
    let mut clusters = None;
    let mut eig = None;
    for _ in 0..tol.retry_seeds {
        let c = generic_self_adjoint(&z, &mut rng);
        let e = herm_eig(&c)?;
        let gap = 1e3 * tol.rank_tol * op_norm(&c).max(1.0);
        let cl = cluster_indices(&e.values, gap);
        if cl.len() == k {
            clusters = Some(cl);
            eig = Some(e);
            break;
        }
    }
    let (clusters, eig) = match (clusters, eig) {
        (Some(c), Some(e)) => (c, e),
        _ => {
            return Err(Error::Degenerate {
                attempts: tol.retry_seeds,
                detail: format!("central element never separated {k} blocks"),
            })
        }
    };

    let mut blocks = Vec::with_capacity(k);
    for cl in &clusters {
        let cols: Vec<ComplexMatrix> = cl.iter().map(|&i| eig.vector(i)).collect();
        let q = ComplexMatrix::from_columns(&cols);
        blocks.push(decompose_block(m, &q, &mut rng, tol)?);
    }
    blocks.sort_by_key(|b| (b.n, b.m));
    let s = CentralDecomposition { blocks };

    if s.ambient_dim() != d || s.algebra_dim() != m.dim() {
        return Err(Error::Structural(format!(
            "block bookkeeping failed: Σnm = {}, Σn² = {} for d = {d}, dim M = {}",
            s.ambient_dim(),
            s.algebra_dim(),
            m.dim()
        )));
    }
    let residual = s.block_form_residual(m);
    if residual > tol.assert_tol {
        return Err(Error::CertificateViolation {
            name: crate::certificate::ids::BLOCK_FORM.into(),
            measured: residual,
            bound: tol.assert_tol,
        });
    }
    Ok(s)
}

/// Block diagonal `⊕ X_ι`.
#[cfg(test)]
pub(crate) fn direct_sum(parts: &[ComplexMatrix]) -> ComplexMatrix {
    let d: usize = parts.iter().map(|p| p.rows()).sum();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut o = 0;
    for p in parts {
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                out[(o + i, o + j)] = p[(i, j)];
            }
        }
        o += p.rows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn partial_traces_of_a_tensor() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 - j as f64, 0.5));
        let k = a.kron(&b);
        assert!((&partial_trace_second(&k, 2, 3) - &a.scale(b.trace())).fro_norm() < 1e-12);
        assert!((&partial_trace_first(&k, 2, 3) - &b.scale(a.trace())).fro_norm() < 1e-12);
    }

    #[test]
    fn scalars_are_one_block() {
        let s = structure(&VNAlgebra::scalars(5), &tol()).unwrap();
        assert_eq!(s.shape(), vec![(1, 5)]);
    }

    #[test]
    fn recovers_random_specs() {
        for (seed, spec) in [(1u64, vec![(2, 3)]), (2, vec![(3, 2), (2, 1)]), (3, vec![(1, 1), (1, 2), (2, 2)])] {
            let spec = BlockSpec::new(spec).unwrap();
            let (m, _) = random_algebra(&spec, seed).unwrap();
            let s = structure(&m, &tol()).unwrap();
            assert_eq!(s.shape(), spec.sorted().0);
            assert!(s.partition_defect() < 1e-9);
            assert!(s.block_form_residual(&m) < 1e-9);
            let mc = crate::algebra::commutant(&m, &tol()).unwrap();
            assert!(mc.basis().mutual_residual(&s.commutant_basis()) < 1e-9);
        }
    }

    #[test]
    fn direct_sum_acting_on_amplified_space() {
        // M₂ ⊕ M₃ on ℂ² ⊕ (ℂ³ ⊗ ℂ²)
        let mut gens = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                gens.push(direct_sum(&[ComplexMatrix::unit(2, i, j), ComplexMatrix::zeros(6, 6)]));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let e = ComplexMatrix::unit(3, i, j).kron(&ComplexMatrix::identity(2));
                gens.push(direct_sum(&[ComplexMatrix::zeros(2, 2), e]));
            }
        }
        let m = VNAlgebra::from_spanning_set(8, gens.iter(), &tol()).unwrap();
        assert_eq!(m.dim(), 13);
        let s = structure(&m, &tol()).unwrap();
        assert_eq!(s.shape(), vec![(2, 1), (3, 2)]);
    }
}
