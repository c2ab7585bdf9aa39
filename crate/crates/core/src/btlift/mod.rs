//! Lifting a sequence of vectors in `M ξ_o` to operators `b_k` in the norm
//! closure of `M a` with `b_k η_o = ξ_k` and `‖b_k‖ ≤ √γ_k`.

mod gamma;
mod lift;

pub use gamma::{gamma_schedule, gamma_schedule_with_remainder, GammaSchedule};
pub use lift::{approximants, bt_convergence_run, bt_lift, Approximants, BTResult};

use serde::{Deserialize, Serialize};

use crate::algebra::VNAlgebra;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub const DEFAULT_DEPTH: usize = 6;
pub const DEFAULT_BETA: f64 = 0.5;

/// How the partial sums `Σ_{j≤n} x_{k,j} ξ_o` approach `ξ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ApproximantMode {
    /// One least-squares step, then zeros.
    Exact,
    /// Damped corrections with residual exactly `β‖ξ_k‖/4^{n+2}`.
    Scheduled { beta: f64 },
}

impl Default for ApproximantMode {
    fn default() -> Self {
        Self::Scheduled { beta: DEFAULT_BETA }
    }
}

impl std::str::FromStr for ApproximantMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "scheduled" => Ok(Self::default()),
            _ => match s.strip_prefix("scheduled:") {
                Some(b) => {
                    let beta = b
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad beta in mode `{s}`")))?;
                    Ok(Self::Scheduled { beta })
                }
                None => Err(Error::InvalidArgument(format!(
                    "unknown mode `{s}` (expected exact, scheduled or scheduled:<beta>)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct BTInstance {
    pub algebra: VNAlgebra,
    pub xi0: ComplexMatrix,
    pub xis: Vec<ComplexMatrix>,
    pub gammas: Vec<f64>,
    pub depth: usize,
    pub mode: ApproximantMode,
}

impl BTInstance {
    pub fn new(
        algebra: VNAlgebra,
        xi0: ComplexMatrix,
        xis: Vec<ComplexMatrix>,
        gammas: Vec<f64>,
        depth: usize,
        mode: ApproximantMode,
    ) -> Result<Self> {
        let d = algebra.ambient_dim();
        if xi0.shape() != (d, 1) {
            return Err(Error::DimensionMismatch {
                context: "xi0",
                expected: d,
                found: xi0.rows(),
            });
        }
        if let Some(x) = xis.iter().find(|x| x.shape() != (d, 1)) {
            return Err(Error::DimensionMismatch {
                context: "xi_k",
                expected: d,
                found: x.rows(),
            });
        }
        if gammas.len() != xis.len() {
            return Err(Error::DimensionMismatch {
                context: "gammas",
                expected: xis.len(),
                found: gammas.len(),
            });
        }
        if let Some(g) = gammas.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::InvalidArgument(format!("gamma must be positive, got {g}")));
        }
        if let ApproximantMode::Scheduled { beta } = mode {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::InvalidArgument(format!("beta must lie in (0, 1), got {beta}")));
            }
        }
        Ok(Self {
            algebra,
            xi0,
            xis,
            gammas,
            depth,
            mode,
        })
    }

    pub fn len(&self) -> usize {
        self.xis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xis.is_empty()
    }

    /// `Σ_k ‖ξ_k‖²/γ_k`
    pub fn weighted_norm(&self) -> f64 {
        self.xis.iter().zip(&self.gammas).map(|(x, g)| x.norm().powi(2) / g).sum()
    }
}
