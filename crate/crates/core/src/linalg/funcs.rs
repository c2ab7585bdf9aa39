//! Spectral calculus for Hermitian matrices.

use serde::{Deserialize, Serialize};

use super::eig::{herm_eig_checked, HermitianEigen};
use super::matrix::ComplexMatrix;
use super::Tolerances;
use crate::error::{Error, Result};

/// Real interval with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// `[lo, hi]`
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: true }
    }

    /// `(lo, hi)`
    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: false, hi_closed: false }
    }

    /// Membership with boundary slack `tol`: eigenvalues that close to an
    /// endpoint go to the closed side, i.e. inside a closed end and outside
    /// an open one.
    fn classify(&self, x: f64, tol: f64) -> (bool, bool) {
        let near = (x - self.lo).abs() <= tol || (x - self.hi).abs() <= tol;
        let above_lo = if self.lo_closed { x >= self.lo - tol } else { x > self.lo + tol };
        let below_hi = if self.hi_closed { x <= self.hi + tol } else { x < self.hi - tol };
        (above_lo && below_hi, near)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalarFunction {
    Sqrt,
    InvSqrt,
    Inv,
    CharInterval(Interval),
}

/// Spectral projection together with the boundary-ambiguity flag.
#[derive(Debug, Clone)]
pub struct SpectralProjection {
    pub projection: ComplexMatrix,
    pub rank: usize,
    /// Some eigenvalue lay within the boundary slack of an endpoint.
    pub ambiguous: bool,
}

fn spectral_scale(e: &HermitianEigen) -> f64 {
    e.values.iter().fold(0.0f64, |m, &l| m.max(l.abs()))
}

pub fn spectral_projection_of(e: &HermitianEigen, interval: Interval, rank_tol: f64) -> SpectralProjection {
    let tol = rank_tol * spectral_scale(e).max(1.0);
    let mut ambiguous = false;
    let mut rank = 0;
    let projection = e.apply(|l| {
        let (inside, near) = interval.classify(l, tol);
        ambiguous |= near;
        if inside {
            rank += 1;
            1.0
        } else {
            0.0
        }
    });
    SpectralProjection { projection, rank, ambiguous }
}

/// `χ_I(A)` with the boundary convention of [`Interval`].
pub fn spectral_projection(a: &ComplexMatrix, interval: Interval, tol: &Tolerances) -> Result<SpectralProjection> {
    let e = herm_eig_checked(a, tol.assert_tol)?;
    Ok(spectral_projection_of(&e, interval, tol.rank_tol))
}

/// Applies `f` to an eigen-decomposition, checking the domain of `f`.
pub fn apply_function(e: &HermitianEigen, f: ScalarFunction, rank_tol: f64) -> Result<ComplexMatrix> {
    let scale = spectral_scale(e);
    let floor = if scale > 0.0 { rank_tol * scale } else { rank_tol };
    match f {
        ScalarFunction::Sqrt => {
            if let Some(&bad) = e.values.iter().find(|&&l| l < -floor) {
                return Err(Error::Domain { function: "sqrt", eigenvalue: bad });
            }
            Ok(e.apply(|l| l.max(0.0).sqrt()))
        }
        ScalarFunction::InvSqrt => {
            if let Some(&bad) = e.values.iter().find(|&&l| l <= floor) {
                return Err(Error::Domain { function: "inv_sqrt", eigenvalue: bad });
            }
            Ok(e.apply(|l| 1.0 / l.sqrt()))
        }
        ScalarFunction::Inv => {
            if let Some(&bad) = e.values.iter().find(|&&l| l.abs() <= floor) {
                return Err(Error::Domain { function: "inv", eigenvalue: bad });
            }
            Ok(e.apply(|l| 1.0 / l))
        }
        ScalarFunction::CharInterval(iv) => Ok(spectral_projection_of(e, iv, rank_tol).projection),
    }
}

/// `f(A) = V · diag(f(λ)) · V*` for Hermitian `A`.
pub fn matrix_function(a: &ComplexMatrix, f: ScalarFunction, tol: &Tolerances) -> Result<ComplexMatrix> {
    let e = herm_eig_checked(a, tol.assert_tol)?;
    apply_function(&e, f, tol.rank_tol)
}

pub fn sqrtm(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    matrix_function(a, ScalarFunction::Sqrt, tol)
}

pub fn inv_sqrtm(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    matrix_function(a, ScalarFunction::InvSqrt, tol)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> f64 {
    super::eig::herm_eig_checked(a, f64::INFINITY)
        .map(|e| e.min())
        .unwrap_or(f64::NAN)
}
