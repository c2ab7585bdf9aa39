use serde::{Deserialize, Serialize};

use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};

/// Weights `γ_k → 0` keeping `Σ α_k/γ_k` finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaSchedule {
    pub gammas: Vec<f64>,
    /// `T_k = Σ_{j≥k} α_j` for `k = 1..=K+1`; the last entry is the remainder.
    pub tails: Vec<f64>,
    /// `Σ_{k≤K} α_k/γ_k`
    pub weighted_sum: f64,
    /// `√T_1 − √T_{K+1}`
    pub telescoped: f64,
    pub certificates: CertificateSet,
}

const TELESCOPING_TOL: f64 = 1e-12;

/// `γ_k = √T_k + √T_{k+1}` when `α_k > 0`, else `2^{−k}`, with tails of the
/// finite sequence.
pub fn gamma_schedule(alphas: &[f64]) -> Result<GammaSchedule> {
    gamma_schedule_with_remainder(alphas, 0.0)
}

/// As [`gamma_schedule`], for a sequence continuing past `K` with known
/// tail sum `remainder = Σ_{j>K} α_j`.
pub fn gamma_schedule_with_remainder(alphas: &[f64], remainder: f64) -> Result<GammaSchedule> {
    if let Some(bad) = alphas.iter().chain([&remainder]).find(|a| !(a.is_finite() && **a >= 0.0)) {
        return Err(Error::InvalidArgument(format!("alpha must be finite and nonnegative, got {bad}")));
    }
    let k = alphas.len();
    let mut tails = vec![0.0; k + 1];
    tails[k] = remainder;
    for i in (0..k).rev() {
        tails[i] = tails[i + 1] + alphas[i];
    }
    let gammas: Vec<f64> = (0..k)
        .map(|i| {
            if alphas[i] > 0.0 {
                tails[i].sqrt() + tails[i + 1].sqrt()
            } else {
                0.5f64.powi(i as i32 + 1)
            }
        })
        .collect();
    let weighted_sum: f64 = alphas.iter().zip(&gammas).map(|(a, g)| a / g).sum();
    let telescoped = tails[0].sqrt() - tails[k].sqrt();
    let rel = (weighted_sum - telescoped).abs() / telescoped.abs().max(f64::MIN_POSITIVE);
    let mut certificates = CertificateSet::new();
    certificates.at_most(
        ids::GAMMA_TELESCOPING,
        if telescoped == 0.0 { weighted_sum.abs() } else { rel },
        TELESCOPING_TOL,
        0.0,
    );
    Ok(GammaSchedule {
        gammas,
        tails,
        weighted_sum,
        telescoped,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term() {
        let g = gamma_schedule(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(g.gammas, vec![1.0, 0.25, 0.125, 0.0625]);
        assert!((g.weighted_sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn geometric_worked_value() {
        let alphas: Vec<f64> = (1..=8).map(|k| 0.25f64.powi(k)).collect();
        let g = gamma_schedule_with_remainder(&alphas, 0.25f64.powi(8) / 3.0).unwrap();
        let expected = (1.0f64 / 3.0).sqrt() + (1.0f64 / 12.0).sqrt();
        assert!((g.gammas[0] - expected).abs() < 1e-14);
        assert!((g.gammas[0] - 0.866025).abs() < 1e-6);
        assert!(g.certificates.all_pass());

        let alphas: Vec<f64> = (1..=30).map(|k| 0.25f64.powi(k)).collect();
        let g = gamma_schedule(&alphas).unwrap();
        assert!((g.weighted_sum - (1.0f64 / 3.0).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn zeros_and_negative() {
        let g = gamma_schedule(&[0.0; 3]).unwrap();
        assert_eq!(g.gammas, vec![0.5, 0.25, 0.125]);
        assert!(g.certificates.all_pass());
        assert!(gamma_schedule(&[1.0, -1e-3]).is_err());
    }
}
