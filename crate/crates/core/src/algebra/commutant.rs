//! Commutants and centres.
//!
//! `X` commutes with a *-closed set exactly when it commutes with a real
//! spanning set of Hermitian elements. A generic Hermitian `h₁` in that span
//! already confines `X` to the block-diagonal matrices in the eigenbasis of
//! `h₁`; the remaining Sylvester constraints are solved on that much smaller
//! space and then checked against the whole set.

use rand::Rng;

use super::{cluster_indices, VNAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, nullspace_scaled, op_norm, ComplexMatrix, HsBasis, Tolerances, C64};
use crate::rng::{derived, gaussian_real};

const COMMUTANT_SEED: u64 = 0xC033_07A7;

fn generic_combination(set: &[ComplexMatrix], d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for s in set {
        h.axpy(C64::new(gaussian_real(rng), 0.0), s);
    }
    h.hermitian_part()
}

fn combine(items: &[ComplexMatrix], coeffs: &ComplexMatrix, col: usize) -> ComplexMatrix {
    let (r, c) = items[0].shape();
    let mut out = ComplexMatrix::zeros(r, c);
    for (i, x) in items.iter().enumerate() {
        let k = coeffs[(i, col)];
        if k != C64::new(0.0, 0.0) {
            out.axpy(k, x);
        }
    }
    out
}

/// Restricts the orthonormal family `candidates` to the elements commuting
/// with `h`.
fn restrict(candidates: Vec<ComplexMatrix>, h: &ComplexMatrix, tol: &Tolerances) -> Vec<ComplexMatrix> {
    if candidates.is_empty() {
        return candidates;
    }
    let columns: Vec<ComplexMatrix> = candidates.iter().map(|x| x.commutator(h).vectorize()).collect();
    let l = ComplexMatrix::from_columns(&columns);
    let kernel = nullspace_scaled(&l, tol.rank_tol, 2.0 * op_norm(h));
    (0..kernel.cols()).map(|j| combine(&candidates, &kernel, j)).collect()
}

/// Elements of `span(candidates)` commuting with every element of `herm`
/// (a list of Hermitian matrices).
fn commuting_within(
    mut candidates: Vec<ComplexMatrix>,
    herm: &[ComplexMatrix],
    d: usize,
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Vec<ComplexMatrix> {
    if herm.is_empty() {
        return candidates;
    }
    let h2 = generic_combination(herm, d, rng);
    candidates = restrict(candidates, &h2, tol);
    // Generic elements almost always suffice; anything that still fails is
    // imposed directly.
    for h in herm {
        let scale = h.fro_norm().max(1.0);
        let worst = candidates
            .iter()
            .map(|x| x.commutator(h).fro_norm())
            .fold(0.0, f64::max);
        if worst > tol.rank_tol * scale {
            candidates = restrict(candidates, h, tol);
        }
    }
    candidates
}

/// Hermitian real spanning set of the *-algebra generated linearly by `set`.
fn hermitian_parts(set: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    set.iter()
        .flat_map(|b| [b.hermitian_part(), b.anti_hermitian_part()])
        .filter(|h| h.fro_norm() > 1e-14)
        .collect()
}

/// HS-orthonormal basis of `{X : X s = s X and X s* = s* X for all s ∈ set}`.
pub fn commutant_of_set(set: &[ComplexMatrix], d: usize, tol: &Tolerances) -> Result<HsBasis> {
    if let Some(bad) = set.iter().find(|s| s.shape() != (d, d)) {
        return Err(Error::DimensionMismatch {
            context: "commutant",
            expected: d,
            found: bad.rows(),
        });
    }
    let herm = hermitian_parts(set);
    let mut rng = derived(COMMUTANT_SEED, d as u64);
    let h1 = generic_combination(&herm, d, &mut rng);
    let e = herm_eig(&h1)?;
    let gap = 1e3 * tol.rank_tol * op_norm(&h1).max(1.0);
    let mut candidates = Vec::new();
    for cluster in cluster_indices(&e.values, gap) {
        for &a in &cluster {
            for &b in &cluster {
                candidates.push(ComplexMatrix::outer(&e.vector(a), &e.vector(b)));
            }
        }
    }
    let found = commuting_within(candidates, &herm, d, &mut rng, tol);
    Ok(HsBasis::orthonormalize(found.iter(), tol.rank_tol))
}

/// The commutant `M′` as an algebra.
pub fn commutant(m: &VNAlgebra, tol: &Tolerances) -> Result<VNAlgebra> {
    let b = commutant_of_set(m.elements(), m.ambient_dim(), tol)?;
    VNAlgebra::from_spanning_set(m.ambient_dim(), b.elements(), tol)
}

/// Centre `Z(M) = M ∩ M′` as the intersection of the two spans.
///
/// Unknowns range over the smaller of the two bases; the constraint is the
/// component orthogonal to the other algebra.
pub fn centre(m: &VNAlgebra, tol: &Tolerances) -> Result<HsBasis> {
    let mc = commutant(m, tol)?;
    let (small, other) = if mc.dim() <= m.dim() { (&mc, m) } else { (m, &mc) };
    let columns: Vec<ComplexMatrix> = small
        .elements()
        .iter()
        .map(|x| (x - &other.project(x)).vectorize())
        .collect();
    let kernel = nullspace_scaled(&ComplexMatrix::from_columns(&columns), tol.rank_tol, 1.0);
    let found: Vec<ComplexMatrix> = (0..kernel.cols()).map(|j| combine(small.elements(), &kernel, j)).collect();
    let unit = ComplexMatrix::identity(m.ambient_dim());
    Ok(HsBasis::orthonormalize(std::iter::once(&unit).chain(found.iter()), tol.rank_tol))
}

/// Centre computed as the commutant of `M` taken inside `M`.
pub fn centre_within(m: &VNAlgebra, tol: &Tolerances) -> Result<HsBasis> {
    let herm = m.hermitian_spanning_set();
    let d = m.ambient_dim();
    let mut rng = derived(COMMUTANT_SEED ^ 0x2E, d as u64);
    let found = commuting_within(m.elements().to_vec(), &herm, d, &mut rng, tol);
    let unit = ComplexMatrix::identity(d);
    Ok(HsBasis::orthonormalize(std::iter::once(&unit).chain(found.iter()), tol.rank_tol))
}
