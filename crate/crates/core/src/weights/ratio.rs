use serde::{Deserialize, Serialize};

use super::{canonical_trace, pt_derivative, LeftIdeal, PTDerivative, TraceData};
use crate::algebra::{random_element, random_self_adjoint, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, inverse, op_norm, svd, ComplexMatrix, HsBasis, Tolerances};
use crate::modular::StateDensity;
use crate::rng::{derived, random_unit_vector, SeededRng};

pub const SEARCH_SAMPLES: usize = 10_000;
const SEARCH_SEED: u64 = 0x5A7;
const LOWER_BOUND_SAMPLES: usize = 100;
const NORM_SAMPLES: usize = 256;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupRatio {
    /// `sup ‖b‖/φ(b) = 1/λ_min(A)`
    pub value: f64,
    pub lambda_min: f64,
    /// Minimal projection under `λ_min` attaining the supremum.
    pub witness: ComplexMatrix,
    pub witness_ratio: f64,
    /// Largest ratio found by random search over positive `b`.
    pub search_max: f64,
    pub samples: usize,
    pub certificates: CertificateSet,
}

fn ratio(b: &ComplexMatrix, phi: &StateDensity) -> f64 {
    op_norm(b) / phi.eval(b).re
}

/// Positive samples: `x*x` for Gaussian `x ∈ M`, and every fourth one a
/// rank-one projection inside a block, which sits where the extremes are.
fn random_positive_in(trace: &TraceData, m: &VNAlgebra, i: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let blocks = &trace.decomposition.blocks;
    if i % 4 == 3 {
        let b = &blocks[(i / 4) % blocks.len()];
        let v = random_unit_vector(b.n, rng);
        b.embed_factor(&ComplexMatrix::outer(&v, &v))
    } else {
        let x = random_element(m, rng);
        x.adjoint().matmul(&x)
    }
}

pub fn sup_ratio(m: &VNAlgebra, phi: &StateDensity, tol: &Tolerances) -> Result<SupRatio> {
    let trace = canonical_trace(m, tol)?;
    let pt = pt_derivative(&trace, m, phi, tol)?;
    sup_ratio_with(&trace, m, phi, &pt, SEARCH_SAMPLES, tol)
}

/// Analytic value from the derivative, cross-checked by `samples` random draws.
pub fn sup_ratio_with(
    trace: &TraceData,
    m: &VNAlgebra,
    phi: &StateDensity,
    pt: &PTDerivative,
    samples: usize,
    tol: &Tolerances,
) -> Result<SupRatio> {
    if pt.lambda_min <= tol.rank_tol * pt.lambda_max.max(1.0) {
        return Err(Error::NotFaithful {
            lambda_min: pt.lambda_min,
        });
    }
    let value = 1.0 / pt.lambda_min;
    let witness = pt.bottom_projection.clone();
    let witness_ratio = ratio(&witness, phi);
    let mut rng = derived(SEARCH_SEED, m.ambient_dim() as u64);
    let search_max = (0..samples)
        .map(|i| ratio(&random_positive_in(trace, m, i, &mut rng), phi))
        .fold(0.0, f64::max);
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::SUP_RATIO_BRIDGE, (value * pt.lambda_min - 1.0).abs(), tol.assert_tol, 0.0);
    certificates.at_most(ids::SUP_RATIO_WITNESS, (witness_ratio / value - 1.0).abs(), tol.assert_tol, 0.0);
    certificates.at_most(ids::SUP_RATIO_SEARCH, search_max, value, tol.assert_tol);
    Ok(SupRatio {
        value,
        lambda_min: pt.lambda_min,
        witness,
        witness_ratio,
        search_max,
        samples,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightReport {
    pub shape: Vec<(usize, usize)>,
    pub derivative: ComplexMatrix,
    pub lambda_min: f64,
    pub sup_ratio: Option<f64>,
    /// `c` with `‖x‖ ≤ c·φ(x*x)^{1/2}`.
    pub closed_graph_c: Option<f64>,
    pub gns_rank: usize,
    pub dim_algebra: usize,
    /// Nonzero `x` with `φ(x*x) = 0` when `φ` is not faithful.
    pub kernel_witness: Option<ComplexMatrix>,
    /// `(rank e, dim eMe)` for the sampled projections.
    pub reduced_dims: Vec<(usize, usize)>,
    /// `min (φ(b) − λ τ(b))/τ(b)` over sampled positive `b`.
    pub lower_bound_margin: f64,
    /// `min τ(x*x)^{1/2} − ‖x‖` per block over sampled `x`.
    pub hs_dominance_margin: f64,
    pub gns_surjective: bool,
    pub sup_ratio_finite: bool,
    pub reduced_finite: bool,
    pub type_i_lower_bound: bool,
    pub certificates: CertificateSet,
}

impl WeightReport {
    pub fn all_conditions(&self) -> bool {
        self.gns_surjective && self.sup_ratio_finite && self.reduced_finite && self.type_i_lower_bound
    }
}

fn reduced_dim(m: &VNAlgebra, e: &ComplexMatrix, tol: &Tolerances) -> usize {
    let compressed: Vec<ComplexMatrix> = m.elements().iter().map(|b| e.matmul(b).matmul(e)).collect();
    HsBasis::orthonormalize(compressed.iter(), tol.rank_tol).len()
}

/// Quantitative form of: surjectivity of `x ↦ x_φ`, finiteness of
/// `sup ‖b‖/φ(b)`, finite-dimensional corners, and `φ ≥ λ·⊕τ_ι`.
pub fn check_complement_conditions(m: &VNAlgebra, phi: &StateDensity, tol: &Tolerances) -> Result<WeightReport> {
    let trace = canonical_trace(m, tol)?;
    let pt = pt_derivative(&trace, m, phi, tol)?;
    let mut certificates = trace.certificates.clone();
    certificates.extend(pt.certificates.clone());

    let (gns_rank, kernel_witness) = LeftIdeal::domain(m).gns_rank(phi, tol)?;
    let gns_surjective = gns_rank == m.dim();
    certificates.at_least(ids::GNS_SURJECTIVE, gns_rank as f64, m.dim() as f64, 0.0);

    let sup = if gns_surjective {
        Some(sup_ratio_with(&trace, m, phi, &pt, SEARCH_SAMPLES / 10, tol)?)
    } else {
        None
    };
    let mut rng = derived(SEARCH_SEED, 1 + m.ambient_dim() as u64);
    let closed_graph_c = sup.as_ref().map(|s| s.value.sqrt());
    if let (Some(s), Some(c)) = (&sup, closed_graph_c) {
        certificates.extend(s.certificates.clone());
        let mut worst = (c * phi.eval(&s.witness).re.sqrt() - 1.0).abs();
        for _ in 0..LOWER_BOUND_SAMPLES {
            let x = random_element(m, &mut rng);
            let x = x.scale_real(1.0 / op_norm(&x));
            worst = worst.max(1.0 - c * phi.eval(&x.adjoint().matmul(&x)).re.sqrt());
        }
        certificates.at_most(ids::CLOSED_GRAPH, worst.max(0.0), 0.0, tol.assert_tol);
    }

    let mut reduced_dims = Vec::new();
    for b in &trace.decomposition.blocks {
        reduced_dims.push((b.m, reduced_dim(m, &b.minimal_projection(), tol)));
        reduced_dims.push((b.rank(), reduced_dim(m, &b.projection, tol)));
    }
    let h = herm_eig(&random_self_adjoint(m, &mut rng))?;
    let e = h.apply(|l| if l > 0.0 { 1.0 } else { 0.0 });
    reduced_dims.push((e.trace().re.round() as usize, reduced_dim(m, &e, tol)));
    let reduced_finite = reduced_dims.iter().all(|&(_, k)| k <= m.dim());

    let lambda = pt.lambda_min;
    let mut lower_bound_margin = f64::INFINITY;
    let mut hs_dominance_margin = f64::INFINITY;
    for i in 0..LOWER_BOUND_SAMPLES {
        let b = random_positive_in(&trace, m, i, &mut rng);
        let t = trace.tau(&b).re;
        lower_bound_margin = lower_bound_margin.min((phi.eval(&b).re - lambda * t) / t);
        let x = random_element(m, &mut rng);
        for blk in &trace.decomposition.blocks {
            let xi = blk.factor_component(&x);
            let hs = xi.adjoint().matmul(&xi).trace().re.sqrt();
            hs_dominance_margin = hs_dominance_margin.min(hs - svd(&xi).max());
        }
    }
    let faithful_lambda = lambda > tol.rank_tol * pt.lambda_max.max(1.0);
    certificates.at_least(ids::LOWER_BOUND, lower_bound_margin, 0.0, tol.assert_tol);
    let type_i_lower_bound = faithful_lambda && lower_bound_margin >= -tol.assert_tol;
    let sup_ratio_finite = sup.as_ref().is_some_and(|s| s.value.is_finite());

    Ok(WeightReport {
        shape: trace.shape(),
        derivative: pt.a,
        lambda_min: lambda,
        sup_ratio: sup.map(|s| s.value),
        closed_graph_c,
        gns_rank,
        dim_algebra: m.dim(),
        kernel_witness,
        reduced_dims,
        lower_bound_margin,
        hs_dominance_margin,
        gns_surjective,
        sup_ratio_finite,
        reduced_finite,
        type_i_lower_bound,
        certificates,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormEquivalence {
    /// Smallest observed `‖TxT⁻¹‖/‖x‖`.
    pub c1: f64,
    /// Largest observed `‖TxT⁻¹‖/‖x‖`.
    pub c2: f64,
    /// `κ(T) = ‖T‖·‖T⁻¹‖`
    pub kappa: f64,
    pub argmin: ComplexMatrix,
    pub argmax: ComplexMatrix,
    pub samples: usize,
    pub certificates: CertificateSet,
}

/// Sampled bounds for `x ↦ ‖TxT⁻¹‖` against `‖x‖` on `M`, over random
/// elements, the basis, and projections of the ambient matrix units.
pub fn two_norm_equivalence(m: &VNAlgebra, t: &ComplexMatrix, tol: &Tolerances) -> Result<NormEquivalence> {
    let d = m.ambient_dim();
    if t.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            context: "two_norm_equivalence",
            expected: d,
            found: t.rows(),
        });
    }
    let s = svd(t);
    if s.min() < tol.rank_tol * s.max().max(1.0) {
        return Err(Error::Singular { sigma_min: s.min() });
    }
    let t_inv = inverse(t)?;
    let kappa = s.max() / s.min();

    let mut candidates: Vec<ComplexMatrix> = m.elements().to_vec();
    for i in 0..d {
        for j in 0..d {
            let p = m.project(&ComplexMatrix::unit(d, i, j));
            if p.fro_norm() > tol.rank_tol {
                candidates.push(p);
            }
        }
    }
    let mut rng = derived(SEARCH_SEED, 2 + d as u64);
    candidates.extend((0..NORM_SAMPLES).map(|_| random_element(m, &mut rng)));

    let mut lo = (f64::INFINITY, ComplexMatrix::zeros(d, d));
    let mut hi = (0.0, ComplexMatrix::zeros(d, d));
    for x in &candidates {
        let r = op_norm(&t.matmul(x).matmul(&t_inv)) / op_norm(x);
        if r < lo.0 {
            lo = (r, x.clone());
        }
        if r > hi.0 {
            hi = (r, x.clone());
        }
    }
    let excess = (hi.0 / kappa - 1.0).max(1.0 / (kappa * lo.0) - 1.0).max(0.0);
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::NORM_ENVELOPE, excess, 0.0, tol.assert_tol);
    Ok(NormEquivalence {
        c1: lo.0,
        c2: hi.0,
        kappa,
        argmin: lo.1,
        argmax: hi.1,
        samples: candidates.len(),
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};
    use crate::rng::{haar_unitary, random_density, seeded};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn diag_state(d: &[f64]) -> StateDensity {
        StateDensity::new(ComplexMatrix::from_real_diag(d), &tol()).unwrap()
    }

    #[test]
    fn full_matrix_examples() {
        let m = VNAlgebra::full(2);
        let s = sup_ratio(&m, &diag_state(&[0.2, 0.8]), &tol()).unwrap();
        assert!((s.value - 5.0).abs() < 1e-10);
        assert!((s.witness[(0, 0)].re - 1.0).abs() < 1e-10);
        assert!(s.certificates.all_pass(), "{:?}", s.certificates);
        let s = sup_ratio(&m, &diag_state(&[0.5, 0.5]), &tol()).unwrap();
        assert!((s.value - 2.0).abs() < 1e-10);
        assert!((s.witness_ratio - 2.0).abs() < 1e-10);
    }

    #[test]
    fn scalar_identity_functional() {
        let s = sup_ratio(&VNAlgebra::scalars(1), &diag_state(&[1.0]), &tol()).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        let r = check_complement_conditions(&VNAlgebra::scalars(1), &diag_state(&[1.0]), &tol()).unwrap();
        assert!((r.closed_graph_c.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_on_mixed_blocks() {
        let m = VNAlgebra::full(2);
        let r = check_complement_conditions(&m, &diag_state(&[0.2, 0.8]), &tol()).unwrap();
        assert!(r.all_conditions());
        assert!((r.lambda_min - 0.2).abs() < 1e-12);
        assert!((r.closed_graph_c.unwrap() - 5f64.sqrt()).abs() < 1e-10);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates.first_failure());

        let (m, _) = random_algebra(&BlockSpec::new(vec![(2, 1), (1, 1)]).unwrap(), 4).unwrap();
        let phi = StateDensity::new(random_density(3, &mut seeded(4)), &tol()).unwrap();
        let r = check_complement_conditions(&m, &phi, &tol()).unwrap();
        assert!(r.all_conditions());
        assert!(r.hs_dominance_margin >= -1e-12);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates.first_failure());
    }

    #[test]
    fn non_faithful_fails_surjectivity() {
        let r = check_complement_conditions(&VNAlgebra::full(2), &diag_state(&[1.0, 0.0]), &tol()).unwrap();
        assert!(!r.gns_surjective);
        assert!(r.kernel_witness.is_some());
        assert!(!r.certificates.all_pass());
    }

    #[test]
    fn norm_equivalence_examples() {
        let t = ComplexMatrix::from_real_diag(&[1.0, 10.0]);
        let r = two_norm_equivalence(&VNAlgebra::full(2), &t, &tol()).unwrap();
        assert!((r.c2 - 10.0).abs() < 1e-9 && (r.c1 - 0.1).abs() < 1e-9);
        assert!(r.certificates.all_pass());
        let r = two_norm_equivalence(&VNAlgebra::diagonal(2), &t, &tol()).unwrap();
        assert!((r.c1 - 1.0).abs() < 1e-12 && (r.c2 - 1.0).abs() < 1e-12);
        let u = haar_unitary(3, &mut seeded(1));
        let r = two_norm_equivalence(&VNAlgebra::full(3), &u, &tol()).unwrap();
        assert!((r.c1 - 1.0).abs() < 1e-10 && (r.c2 - 1.0).abs() < 1e-10);
    }
}
