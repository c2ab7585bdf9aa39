//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Works on the columns of `A` directly, so small singular values keep their
//! relative accuracy instead of being squared away in `A*A`.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 80;

/// `A · V = U · diag(σ)` with `V` square unitary and singular values descending.
///
/// `u` holds one column per entry of `values`; columns whose singular value
/// is exactly zero are left as zero vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Cutoff used for numerical rank: relative to `σ_max`, absolute when
    /// `σ_max` itself is below `rank_tol` or when `scale` dominates.
    pub fn threshold(&self, rank_tol: f64, scale: f64) -> f64 {
        let reference = self.max().max(scale);
        if reference <= rank_tol {
            rank_tol
        } else {
            rank_tol * reference
        }
    }

    pub fn rank(&self, rank_tol: f64) -> usize {
        self.rank_scaled(rank_tol, 0.0)
    }

    pub fn rank_scaled(&self, rank_tol: f64, scale: f64) -> usize {
        let t = self.threshold(rank_tol, scale);
        self.values.iter().filter(|&&s| s > t).count()
    }
}

pub fn svd(a: &ComplexMatrix) -> Svd {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // [a_p, a_q] ← [a_p, a_q] · [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]
                let g01 = phase * s;
                let g10 = -phase.conj() * s;
                rotate_pair(&mut cols, p, q, c, g01, g10);
                rotate_pair(&mut v, p, q, c, g01, g10);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let u = ComplexMatrix::from_fn(m, n, |i, k| {
        let s = norms[order[k]];
        if s > 0.0 {
            cols[order[k]][i] / s
        } else {
            ZERO
        }
    });
    let vm = ComplexMatrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Svd { u, values, v: vm }
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, g01: C64, g10: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = xp * c + xq * g10;
        *y = xp * g01 + xq * c;
    }
}
