//! Canonical traces, Pedersen–Takesaki derivatives `φ = τ(A·)`, and the
//! quantitative conditions relating `φ` to `‖·‖`.

mod ratio;

pub use ratio::{
    check_complement_conditions, sup_ratio, sup_ratio_with, two_norm_equivalence, NormEquivalence, SupRatio, WeightReport,
    SEARCH_SAMPLES,
};

use serde::{Deserialize, Serialize};

use crate::algebra::{CentralDecomposition, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::Result;
use crate::linalg::{herm_eig, sqrtm, ComplexMatrix, HsBasis, Tolerances, C64};
use crate::modular::StateDensity;

/// `τ = ⊕ τ_ι`, each `τ_ι` the trace of the factor component, so minimal
/// projections have trace 1 whatever the multiplicity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceData {
    pub decomposition: CentralDecomposition,
    pub certificates: CertificateSet,
}

impl TraceData {
    pub fn tau(&self, x: &ComplexMatrix) -> C64 {
        self.decomposition
            .blocks
            .iter()
            .map(|b| b.factor_component(x).trace())
            .sum()
    }

    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.decomposition.shape()
    }
}

pub fn canonical_trace(m: &VNAlgebra, tol: &Tolerances) -> Result<TraceData> {
    let decomposition = m.structure_or_compute(tol)?.into_owned();
    let mut data = TraceData {
        decomposition,
        certificates: CertificateSet::new(),
    };
    let mut defect: f64 = 0.0;
    for b in &data.decomposition.blocks {
        for i in 0..b.n {
            defect = defect.max((data.tau(&b.matrix_unit(i, i)) - 1.0).norm());
        }
    }
    let basis = m.elements();
    for x in basis {
        for y in basis {
            defect = defect.max((data.tau(&x.matmul(y)) - data.tau(&y.matmul(x))).norm());
        }
    }
    data.certificates.at_most(ids::TRACE_MINIMAL, defect, tol.assert_tol, 0.0);
    Ok(data)
}

/// The positive `A ∈ M` with `φ(x) = τ(A^{1/2} x A^{1/2})`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PTDerivative {
    pub a: ComplexMatrix,
    /// Factor-side blocks `A_ι`.
    pub blocks: Vec<ComplexMatrix>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Minimal projection under the bottom of the spectrum of `A`.
    pub bottom_projection: ComplexMatrix,
    /// `max_i |φ(B_i) − τ(A^{1/2} B_i A^{1/2})|`
    pub residual: f64,
    pub certificates: CertificateSet,
}

/// On block `ι`, `A_ι = tr_m(W ρ W*)`, since `tr(ρ W*(X⊗1)W) = tr(A_ι X)`.
pub fn pt_derivative(trace: &TraceData, m: &VNAlgebra, phi: &StateDensity, tol: &Tolerances) -> Result<PTDerivative> {
    let d = m.ambient_dim();
    let mut a = ComplexMatrix::zeros(d, d);
    let mut blocks = Vec::new();
    let mut bottom = (f64::INFINITY, ComplexMatrix::zeros(d, d));
    let mut lambda_max = f64::NEG_INFINITY;
    for b in &trace.decomposition.blocks {
        let ai = crate::algebra::partial_trace_second(&b.compress(phi.rho()), b.n, b.m).hermitian_part();
        let e = herm_eig(&ai)?;
        if e.min() < bottom.0 {
            let v = e.vector(0);
            bottom = (e.min(), b.embed_factor(&ComplexMatrix::outer(&v, &v)));
        }
        lambda_max = lambda_max.max(e.max());
        a += &b.embed_factor(&ai);
        blocks.push(ai);
    }
    let half = sqrtm(&a, tol)?;
    let residual = m
        .elements()
        .iter()
        .map(|x| (phi.eval(x) - trace.tau(&half.matmul(x).matmul(&half))).norm())
        .fold(0.0, f64::max);
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::PT_DERIVATIVE, residual, tol.assert_tol, 0.0);
    certificates.at_least(ids::PT_FAITHFUL, bottom.0, tol.rank_tol * lambda_max.max(1.0), 0.0);
    Ok(PTDerivative {
        a,
        blocks,
        lambda_min: bottom.0,
        lambda_max,
        bottom_projection: bottom.1,
        residual,
        certificates,
    })
}

/// `τ(b^{1/2} A χ_{[0,k]}(A) b^{1/2})`. Eigenvalues within `rank_tol·‖A‖`
/// of `k` count as inside; `k < 0` gives the empty cutoff.
pub fn pt_weight_cutoff(
    trace: &TraceData,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    k: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if k < 0.0 {
        return Ok(0.0);
    }
    let e = herm_eig(&a.hermitian_part())?;
    let slack = tol.rank_tol * e.max().abs().max(1.0);
    let cut = e.apply(|l| if l <= k + slack { l } else { 0.0 });
    let bh = sqrtm(&b.hermitian_part(), tol)?;
    Ok(trace.tau(&bh.matmul(&cut).matmul(&bh)).re)
}

/// `k ↦ pt_weight_cutoff(k)` on a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutoffProfile {
    pub ks: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest decrease between consecutive grid points.
    pub max_drop: f64,
    /// Largest `|f(k) − f(‖A‖)|` over grid points `k ≥ ‖A‖`, compared bitwise.
    pub stable_defect: f64,
    pub certificates: CertificateSet,
}

/// Evaluates the cutoff on `points` equally spaced values in `[0, 2‖A‖]`.
/// Monotone in `k`, and constant once `k ≥ ‖A‖`.
pub fn cutoff_profile(
    trace: &TraceData,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    points: usize,
    tol: &Tolerances,
) -> Result<CutoffProfile> {
    let top = herm_eig(&a.hermitian_part())?.max();
    let steps = points.max(2) - 1;
    let ks: Vec<f64> = (0..=steps).map(|i| 2.0 * top * i as f64 / steps as f64).collect();
    let values = ks
        .iter()
        .map(|&k| pt_weight_cutoff(trace, a, b, k, tol))
        .collect::<Result<Vec<f64>>>()?;
    let max_drop = values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    let full = pt_weight_cutoff(trace, a, b, top, tol)?;
    let stable_defect = ks
        .iter()
        .zip(&values)
        .filter(|(k, _)| **k >= top)
        .map(|(_, v)| if v.to_bits() == full.to_bits() { 0.0 } else { (v - full).abs().max(f64::MIN_POSITIVE) })
        .fold(0.0, f64::max);
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::CUTOFF_MONOTONE, max_drop.max(stable_defect), 0.0, tol.assert_tol * full.abs().max(1.0));
    Ok(CutoffProfile {
        ks,
        values,
        max_drop,
        stable_defect,
        certificates,
    })
}

/// `N_φ = {x : φ(x*x) < ∞}`, all of `M` at finite dimension.
#[derive(Debug, Clone)]
pub struct LeftIdeal {
    pub basis: HsBasis,
}

impl LeftIdeal {
    pub fn domain(m: &VNAlgebra) -> Self {
        Self { basis: m.basis().clone() }
    }

    /// Rank of `x ↦ x_φ` on the ideal, i.e. of `G_ij = φ(B_i* B_j)`, and the
    /// element spanning its kernel when it is not injective.
    pub fn gns_rank(&self, phi: &StateDensity, tol: &Tolerances) -> Result<(usize, Option<ComplexMatrix>)> {
        let b = self.basis.elements();
        let n = b.len();
        let gram = ComplexMatrix::from_fn(n, n, |i, j| phi.eval(&b[i].adjoint().matmul(&b[j])));
        let e = herm_eig(&gram.hermitian_part())?;
        let cut = tol.rank_tol * e.max().max(f64::MIN_POSITIVE);
        let rank = e.values.iter().filter(|&&l| l > cut).count();
        let witness = (rank < n).then(|| self.basis.combine(e.vector(0).as_slice()));
        Ok((rank, witness))
    }
}
