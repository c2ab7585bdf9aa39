//! Positive correction of an operator normalizing `M`.
//!
//! If `T M T⁻¹ = M`, then `Q = T*T` also normalizes `M` and commutes with the
//! centre, so on each block `W Q W* = q ⊗ q′`. With `m = ⊕ q ⊗ 1` and
//! `a = m^{-1/2}`, `(Ta)*(Ta) = m′ ∈ M′`, hence `Ad_{Ta}` is a
//! *-automorphism of `M` even when `Ad_T` is not.

use serde::{Deserialize, Serialize};

use crate::algebra::{random_self_adjoint, CentralDecomposition, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{
    herm_eig, inverse, inv_sqrtm, sqrtm, svd, ComplexMatrix, Tolerances, C64,
};
use crate::rng::{random_positive, seeded, SeededRng};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OkayasuResult {
    /// The positive correction `a ∈ M`.
    pub a: ComplexMatrix,
    /// Positive `m ∈ M` with `tr` of each factor component equal to `n`.
    pub m_factor: ComplexMatrix,
    /// Positive `m′ ∈ M′` with `T*T = m·m′`.
    pub m_prime: ComplexMatrix,
    /// Sub-dominant over dominant singular value of each realigned block.
    pub normalization_defects: Vec<f64>,
    /// `‖T*T − m·m′‖_F / ‖T*T‖_F`
    pub factorization_residual: f64,
    pub raw_star_defect: f64,
    pub star_defect: f64,
    pub certificates: CertificateSet,
}

/// `max_i ‖Ad_T(B_i*) − Ad_T(B_i)*‖_F` over the basis.
pub fn star_defect(m: &VNAlgebra, t: &ComplexMatrix, t_inv: &ComplexMatrix) -> f64 {
    m.elements()
        .iter()
        .map(|b| {
            let ad = t.matmul(b).matmul(t_inv);
            let ad_star = t.matmul(&b.adjoint()).matmul(t_inv);
            (&ad_star - &ad.adjoint()).fro_norm()
        })
        .fold(0.0, f64::max)
}

/// `R[(i,j),(β,γ)] = Q[(i,β),(j,γ)]`, so that `q ⊗ q′` realigns to `vec(q) vec(q′)ᵀ`.
fn realign(q: &ComplexMatrix, n: usize, m: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n * n, m * m, |r, c| {
        let (i, j) = (r / n, r % n);
        let (b, g) = (c / m, c % m);
        q[(i * m + b, j * m + g)]
    })
}

/// Splits a positive `(n·m)×(n·m)` block into `q ⊗ q′` with `tr q = n`.
fn factor_block(q: &ComplexMatrix, n: usize, m: usize) -> (ComplexMatrix, ComplexMatrix, f64) {
    let r = realign(q, n, m);
    let s = svd(&r);
    let sigma = s.max();
    let defect = if s.values.len() > 1 && sigma > 0.0 { s.values[1] / sigma } else { 0.0 };
    let u = s.u.col(0).reshape(n, n);
    let v = s.v.col(0).conj().reshape(m, m);
    // R = σ u v*, so q ∝ u and q′ ∝ conj(v); the phase makes tr q real positive.
    let tr = u.trace();
    let phase = tr.conj() / tr.norm();
    let qa = u.scale(phase).hermitian_part();
    let qb = v.scale(phase.conj() * sigma).hermitian_part();
    let gauge = n as f64 / qa.trace().re;
    (qa.scale_real(gauge), qb.scale_real(1.0 / gauge), defect)
}

/// Positive `a ∈ M` making `Ad_{Ta}` a *-automorphism of `M`.
pub fn okayasu_correct(m: &VNAlgebra, t: &ComplexMatrix, tol: &Tolerances) -> Result<OkayasuResult> {
    let d = m.ambient_dim();
    if t.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            context: "okayasu_correct",
            expected: d,
            found: t.rows(),
        });
    }
    let t_inv = inverse(t)?;
    let leak = m
        .elements()
        .iter()
        .map(|b| m.membership_residual(&t.matmul(b).matmul(&t_inv)))
        .fold(0.0, f64::max);
    if leak > tol.assert_tol {
        return Err(Error::Structural(format!(
            "conjugation by T does not preserve M (residual {leak:.3e})"
        )));
    }
    let s = m.structure_or_compute(tol)?;
    let q = t.adjoint().matmul(t).hermitian_part();
    let qscale = q.fro_norm();
    let central_leak = s
        .blocks
        .iter()
        .map(|b| q.commutator(&b.projection).fro_norm())
        .fold(0.0, f64::max);
    if central_leak > tol.assert_tol * qscale {
        return Err(Error::Structural(format!(
            "T*T does not commute with the centre (defect {central_leak:.3e})"
        )));
    }

    let mut m_factor = ComplexMatrix::zeros(d, d);
    let mut m_prime = ComplexMatrix::zeros(d, d);
    let mut a = ComplexMatrix::zeros(d, d);
    let mut normalization_defects = Vec::with_capacity(s.blocks.len());
    for b in &s.blocks {
        let (qa, qb, defect) = factor_block(&b.compress(&q), b.n, b.m);
        if defect > tol.assert_tol {
            return Err(Error::Structural(format!(
                "block ({},{}) of T*T is not a tensor product: normalization defect {defect:.3e}",
                b.n, b.m
            )));
        }
        normalization_defects.push(defect);
        m_factor += &b.embed_factor(&qa);
        m_prime += &b.embed_multiplicity(&qb);
        a += &b.embed_factor(&inv_sqrtm(&qa, tol)?);
    }
    let factorization_residual = (&q - &m_factor.matmul(&m_prime)).fro_norm() / qscale;

    let ta = t.matmul(&a);
    let ta_inv = inverse(&ta)?;
    let raw_star_defect = star_defect(m, t, &t_inv);
    let star = star_defect(m, &ta, &ta_inv);
    let mut certificates = CertificateSet::new();
    certificates.at_most(ids::OKAYASU_STAR_DEFECT, star, tol.assert_tol, 0.0);
    certificates.at_most(ids::OKAYASU_FACTOR_DEFECT, factorization_residual, tol.assert_tol, 0.0);
    Ok(OkayasuResult {
        a,
        m_factor,
        m_prime,
        normalization_defects,
        factorization_residual,
        raw_star_defect,
        star_defect: star,
        certificates,
    })
}

fn random_unitary_in(m: &VNAlgebra, rng: &mut SeededRng) -> Result<ComplexMatrix> {
    let h = random_self_adjoint(m, rng);
    let e = herm_eig(&h)?;
    let d = h.rows();
    let mut u = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        let v = e.vector(k);
        u.axpy(C64::from_polar(1.0, e.values[k]), &ComplexMatrix::outer(&v, &v));
    }
    Ok(u)
}

/// `T = u·u′·(m·m′)^{1/2}` with random unitaries `u ∈ M`, `u′ ∈ M′` and
/// random positive `m ∈ M`, `m′ ∈ M′` (spectra in `[0.2, 3]`), assembled
/// through the decomposition `s` of `M`.
pub fn random_normalizing_operator(
    m: &VNAlgebra,
    mc: &VNAlgebra,
    s: &CentralDecomposition,
    seed: u64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let mut rng = seeded(seed);
    let d = m.ambient_dim();
    let mut mm = ComplexMatrix::zeros(d, d);
    let mut mp = ComplexMatrix::zeros(d, d);
    for b in &s.blocks {
        mm += &b.embed_factor(&random_positive(b.n, 0.2, 3.0, &mut rng));
        mp += &b.embed_multiplicity(&random_positive(b.m, 0.2, 3.0, &mut rng));
    }
    let u = random_unitary_in(m, &mut rng)?.matmul(&random_unitary_in(mc, &mut rng)?);
    Ok(u.matmul(&sqrtm(&mm.matmul(&mp).hermitian_part(), tol)?))
}
