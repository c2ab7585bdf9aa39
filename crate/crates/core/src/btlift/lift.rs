use serde::{Deserialize, Serialize};

use super::gamma::gamma_schedule;
use super::{ApproximantMode, BTInstance};
use crate::algebra::{orbit_matrix, VNAlgebra};
use crate::certificate::{ids, CertificateSet, WorstCase};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, op_norm, ComplexMatrix, LeastSquaresSolver, Tolerances};

/// `x_{k,j}` with the residual schedule `r_{k,n} = ‖ξ_k − Σ_{j≤n} x_{k,j} ξ_o‖`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Approximants {
    pub x: Vec<Vec<ComplexMatrix>>,
    pub residuals: Vec<Vec<f64>>,
    /// `‖x_{k,j} ξ_o‖`
    pub term_norms: Vec<Vec<f64>>,
    pub certificates: CertificateSet,
}

fn quarter_pow(n: usize) -> f64 {
    0.25f64.powi(n as i32)
}

pub fn approximants(inst: &BTInstance, tol: &Tolerances) -> Result<Approximants> {
    let m = &inst.algebra;
    let d = m.ambient_dim();
    let solver = LeastSquaresSolver::new(orbit_matrix(m, &inst.xi0), tol.rank_tol);
    let zero = ComplexMatrix::zeros(d, d);
    let mut out = Approximants {
        x: Vec::with_capacity(inst.len()),
        residuals: Vec::with_capacity(inst.len()),
        term_norms: Vec::with_capacity(inst.len()),
        certificates: CertificateSet::new(),
    };
    let (mut schedule, mut first, mut later) = (WorstCase::default(), WorstCase::default(), WorstCase::default());

    for (k, xi) in inst.xis.iter().enumerate() {
        let nx = xi.norm();
        let mut xs = Vec::with_capacity(inst.depth + 1);
        let mut rs = Vec::with_capacity(inst.depth + 1);
        let mut ts = Vec::with_capacity(inst.depth + 1);
        if nx == 0.0 {
            xs.resize(inst.depth + 1, zero.clone());
            rs.resize(inst.depth + 1, 0.0);
            ts.resize(inst.depth + 1, 0.0);
        } else {
            let step0 = solver.solve(xi);
            let cap = nx / 16.0;
            if step0.residual > cap {
                return Err(Error::Infeasible {
                    index: k + 1,
                    residual: step0.residual,
                    cap,
                });
            }
            let mut r = xi.clone();
            for n in 0..=inst.depth {
                let x = match inst.mode {
                    ApproximantMode::Exact if n == 0 => m.element(&step0.coefficients),
                    ApproximantMode::Exact => zero.clone(),
                    ApproximantMode::Scheduled { beta } => {
                        let target = beta * nx * quarter_pow(n + 2);
                        let current = r.norm();
                        if current > target {
                            let c = solver.solve(&r).coefficients;
                            m.element(&c).scale_real(1.0 - target / current)
                        } else {
                            zero.clone()
                        }
                    }
                };
                let step = x.matmul(&inst.xi0);
                r = &r - &step;
                ts.push(step.norm());
                rs.push(r.norm());
                xs.push(x);
            }
        }
        for (n, (&r, &t)) in rs.iter().zip(&ts).enumerate() {
            schedule.observe(r, nx * quarter_pow(n + 2));
            if n == 0 {
                first.observe(t, 17.0 / 16.0 * nx);
            } else {
                later.observe(t, 5.0 * nx * quarter_pow(n + 2));
            }
        }
        out.x.push(xs);
        out.residuals.push(rs);
        out.term_norms.push(ts);
    }
    out.certificates.push(schedule.certificate(ids::BT_RESIDUAL_SCHEDULE, tol.assert_tol));
    out.certificates.push(first.certificate(ids::BT_FIRST_TERM, tol.assert_tol));
    out.certificates.push(later.certificate(ids::BT_LATER_TERMS, tol.assert_tol));
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BTResult {
    /// `a = y⁻¹`, `0 ≤ a ≤ 1`.
    pub a: ComplexMatrix,
    pub y: ComplexMatrix,
    /// `η = y ξ_o`
    pub eta: ComplexMatrix,
    /// `η_o = s(a) η`
    pub eta0: ComplexMatrix,
    pub bs: Vec<ComplexMatrix>,
    pub approximants: Approximants,
    pub gammas: Vec<f64>,
    /// `c = (‖ξ_o‖² + 5 Σ_k ‖ξ_k‖²/γ_k)^{1/2}`
    pub c: f64,
    /// `‖y_p ξ_o‖` for `p = 1..=P`.
    pub y_prefix_norms: Vec<f64>,
    /// `‖x_{k,j} a‖`
    pub lifted_term_norms: Vec<Vec<f64>>,
    pub b_norms: Vec<f64>,
    pub certificates: CertificateSet,
}

/// Sum of `4^{j+1}/γ_k · x_{k,j}* x_{k,j}` over `k < kmax`, `j < jmax`.
fn weighted_sum(ap: &Approximants, gammas: &[f64], kmax: usize, jmax: usize, d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d, d);
    for (xs, g) in ap.x.iter().zip(gammas).take(kmax) {
        for (j, x) in xs.iter().enumerate().take(jmax) {
            s += &x.adjoint().matmul(x).scale_real(4f64.powi(j as i32 + 1) / g);
        }
    }
    s
}

pub fn bt_lift(inst: &BTInstance, tol: &Tolerances) -> Result<BTResult> {
    let m: &VNAlgebra = &inst.algebra;
    let d = m.ambient_dim();
    let ap = approximants(inst, tol)?;
    let k = inst.len();
    let depth = inst.depth;
    let one = ComplexMatrix::identity(d);
    let xi0_norm = inst.xi0.norm();
    let c2 = xi0_norm.powi(2) + 5.0 * inst.weighted_norm();

    // y_p uses k ≤ p and j ≤ p; p = P already covers every term.
    let last = k.max(depth).max(1);
    let mut y_prefix_norms = Vec::with_capacity(last);
    let mut prefix_bound = WorstCase::default();
    let (mut prev_y, mut prev_inv) = (one.clone(), one.clone());
    let (mut mono, mut mono_inv) = (f64::INFINITY, f64::INFINITY);
    let mut scale: f64 = 1.0;
    for p in 1..=last {
        let e = herm_eig(&(&one + &weighted_sum(&ap, &inst.gammas, p, p + 1, d)).hermitian_part())?;
        let y = e.apply(f64::sqrt);
        let y_inv = e.apply(|l| 1.0 / l.sqrt());
        scale = scale.max(e.max().sqrt());
        mono = mono.min(herm_eig(&(&y - &prev_y).hermitian_part())?.min());
        mono_inv = mono_inv.min(herm_eig(&(&prev_inv - &y_inv).hermitian_part())?.min());
        let norm = y.matmul(&inst.xi0).norm();
        prefix_bound.observe(norm * norm, c2);
        y_prefix_norms.push(norm);
        prev_y = y;
        prev_inv = y_inv;
    }
    let (y, a) = (prev_y, prev_inv);

    let ae = herm_eig(&a)?;
    let a_range = (-ae.min()).max(ae.max() - 1.0).max(0.0);
    let cut = tol.rank_tol * ae.max().max(f64::MIN_POSITIVE);
    let support = ae.apply(|l| if l > cut { 1.0 } else { 0.0 });
    let support_defect = (&support - &one).fro_norm();
    let eta = y.matmul(&inst.xi0);
    let eta0 = support.matmul(&eta);
    let a_eta = (&a.matmul(&eta0) - &inst.xi0).norm();

    let mut weighted = WorstCase::default();
    let mut b_norm = WorstCase::default();
    let mut b_eta = WorstCase::default();
    let mut membership: f64 = 0.0;
    let complement = &one - &support;
    let mut bs = Vec::with_capacity(k);
    let mut lifted_term_norms = Vec::with_capacity(k);
    let mut b_norms = Vec::with_capacity(k);
    for ((xs, g), xi) in ap.x.iter().zip(&inst.gammas).zip(&inst.xis) {
        let mut b = ComplexMatrix::zeros(d, d);
        let mut norms = Vec::with_capacity(xs.len());
        for (j, x) in xs.iter().enumerate() {
            let xa = x.matmul(&a);
            let nrm = op_norm(&xa);
            weighted.observe(nrm, g.sqrt() * 0.5f64.powi(j as i32 + 1));
            norms.push(nrm);
            b += &xa;
        }
        let nb = op_norm(&b);
        b_norm.observe(nb, g.sqrt());
        b_eta.observe((&b.matmul(&eta0) - xi).norm(), xi.norm() * quarter_pow(depth + 2));
        membership = membership
            .max(m.membership_residual(&b))
            .max(b.matmul(&complement).fro_norm());
        b_norms.push(nb);
        lifted_term_norms.push(norms);
        bs.push(b);
    }

    let at = tol.assert_tol;
    let mut certificates = ap.certificates.clone();
    certificates.push(weighted.certificate(ids::BT_WEIGHTED_TERM, at));
    certificates.push(b_norm.certificate(ids::BT_B_NORM, at));
    certificates.push(prefix_bound.certificate(ids::BT_Y_PREFIX, at * c2.max(1.0)));
    certificates.at_most(ids::BT_A_RANGE, a_range, 0.0, at);
    certificates.at_most(ids::BT_A_ETA, a_eta, 0.0, at * xi0_norm);
    certificates.push(b_eta.certificate(ids::BT_B_ETA, at));
    certificates.at_least(ids::BT_Y_MONOTONE, mono, 0.0, at * scale);
    certificates.at_least(ids::BT_Y_INV_MONOTONE, mono_inv, 0.0, at);
    certificates.at_most(ids::BT_B_MEMBERSHIP, membership, 0.0, at);
    certificates.at_most(ids::BT_SUPPORT, support_defect, 0.0, at);

    Ok(BTResult {
        a,
        y,
        eta,
        eta0,
        bs,
        approximants: ap,
        gammas: inst.gammas.clone(),
        c: c2.sqrt(),
        y_prefix_norms,
        lifted_term_norms,
        b_norms,
        certificates,
    })
}

/// `bt_lift` with `γ` from the schedule of `α_k = ‖ξ_k‖²`.
pub fn bt_convergence_run(
    m: &VNAlgebra,
    xi0: &ComplexMatrix,
    xis: &[ComplexMatrix],
    depth: usize,
    mode: ApproximantMode,
    tol: &Tolerances,
) -> Result<BTResult> {
    let alphas: Vec<f64> = xis.iter().map(|x| x.norm().powi(2)).collect();
    let schedule = gamma_schedule(&alphas)?;
    let inst = BTInstance::new(m.clone(), xi0.clone(), xis.to_vec(), schedule.gammas.clone(), depth, mode)?;
    let mut r = bt_lift(&inst, tol)?;
    r.certificates.extend(schedule.certificates);
    Ok(r)
}
