//! GNS representation of a faithful state and its Tomita operators.
//!
//! `H_φ = ℂ^N` with `N = dim M`. A coordinate vector `c` of `x = Σ c_i B_i`
//! maps to `x_φ = G^{1/2} c`, where `G_ij = φ(B_i* B_j)`, so the standard
//! inner product on `H_φ` is `⟨x_φ, y_φ⟩ = φ(y*x)`.

use super::StateDensity;
use crate::algebra::{centre, commutant_of_set, VNAlgebra};
use crate::certificate::{ids, CertificateSet};
use crate::error::{Error, Result};
use crate::linalg::{
    apply_function, herm_eig, herm_eig_checked, AntilinearOp, ComplexMatrix, HsBasis, ScalarFunction, Tolerances,
};

#[derive(Debug, Clone)]
pub struct GNSData {
    pub algebra: VNAlgebra,
    pub state: StateDensity,
    pub gns_dim: usize,
    /// `G^{1/2}`: algebra coordinates to `H_φ`.
    pub lambda_map: ComplexMatrix,
    lambda_inv: ComplexMatrix,
    /// `π_φ(B_i)` for each basis element.
    pub rep_basis: Vec<ComplexMatrix>,
    pub omega: ComplexMatrix,
    pub s: AntilinearOp,
    pub delta: ComplexMatrix,
    pub delta_spectrum: Vec<f64>,
    pub j: AntilinearOp,
    /// `‖L_J − L_Jᵀ‖_F` before symmetrization.
    pub j_symmetrization: f64,
}

impl GNSData {
    /// `x_φ` for `x ∈ M`.
    pub fn vector(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let c = ComplexMatrix::column(&self.algebra.coordinates(x));
        self.lambda_map.matmul(&c)
    }

    /// The element `x` with `x_φ = ξ`.
    pub fn element(&self, xi: &ComplexMatrix) -> ComplexMatrix {
        let c = self.lambda_inv.matmul(xi);
        self.algebra.element(c.as_slice())
    }

    /// `π_φ(x)`
    pub fn rep(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let c = self.algebra.coordinates(x);
        let n = self.gns_dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, r) in c.iter().zip(&self.rep_basis) {
            out.axpy(*k, r);
        }
        out
    }

    /// `J y J` for an operator `y` on `H_φ`.
    pub fn j_conjugate(&self, y: &ComplexMatrix) -> ComplexMatrix {
        let l = self.j.linear_part();
        self.j.conjugate_with(y, &l.conj())
    }

    /// Every invariant of the construction as a named certificate.
    pub fn certificates(&self, tol: &Tolerances) -> Result<CertificateSet> {
        let n = self.gns_dim;
        let b = self.algebra.elements();
        let mut certs = CertificateSet::new();

        let mut ip: f64 = 0.0;
        let cols: Vec<ComplexMatrix> = (0..n).map(|i| self.lambda_map.col(i)).collect();
        for i in 0..n {
            for k in 0..n {
                let lhs = cols[i].vdot(&cols[k]);
                let rhs = self.state.eval(&b[k].adjoint().matmul(&b[i]));
                ip = ip.max((lhs - rhs).norm());
            }
        }
        certs.at_most(ids::GNS_INNER_PRODUCT, ip, tol.assert_tol, 0.0);

        let sqrt_delta = apply_function(&herm_eig(&self.delta)?, ScalarFunction::Sqrt, tol.rank_tol)?;
        let js = self.j.after_linear(&sqrt_delta);
        let polar = (js.linear_part() - self.s.linear_part()).fro_norm();
        let scale = self.s.linear_part().fro_norm().max(1.0);
        certs.at_most(ids::GNS_POLAR, polar / scale, tol.assert_tol, 0.0);

        let inv = self.j.involution_defect().max(self.j.isometry_defect());
        certs.at_most(ids::GNS_J_INVOLUTION, inv, tol.assert_tol, 0.0);

        let rep_commutant = commutant_of_set(&self.rep_basis, n, tol)?;
        let conj: Vec<ComplexMatrix> = self.rep_basis.iter().map(|r| self.j_conjugate(r)).collect();
        let jmj = HsBasis::orthonormalize(conj.iter(), tol.rank_tol);
        let mut res = jmj.mutual_residual(&rep_commutant);
        if jmj.len() != rep_commutant.len() {
            res = res.max(1.0);
        }
        for c in &conj {
            for r in &self.rep_basis {
                res = res.max(c.commutator(r).fro_norm());
            }
        }
        certs.at_most(ids::GNS_JMJ_COMMUTANT, res, tol.assert_tol, 0.0);

        let mut zres: f64 = 0.0;
        for z in centre(&self.algebra, tol)?.iter() {
            let pz = self.rep(z);
            zres = zres.max((&self.j_conjugate(&pz) - &pz.adjoint()).fro_norm());
        }
        certs.at_most(ids::GNS_JZJ_ADJOINT, zres, tol.assert_tol, 0.0);

        let vac_delta = (&self.delta.matmul(&self.omega) - &self.omega).norm();
        let vac_j = (&self.j.apply(&self.omega) - &self.omega).norm();
        certs.at_most(ids::GNS_VACUUM, vac_delta.max(vac_j), tol.assert_tol, 0.0);
        Ok(certs)
    }
}

/// GNS construction for a state faithful on `M`.
pub fn gns(m: &VNAlgebra, phi: &StateDensity, tol: &Tolerances) -> Result<GNSData> {
    let d = m.ambient_dim();
    if phi.dim() != d {
        return Err(Error::DimensionMismatch {
            context: "gns state",
            expected: d,
            found: phi.dim(),
        });
    }
    let b = m.elements();
    let n = b.len();
    let adj: Vec<ComplexMatrix> = b.iter().map(|x| x.adjoint()).collect();
    let gram = ComplexMatrix::from_fn(n, n, |i, j| phi.eval(&adj[i].matmul(&b[j])));
    let ge = herm_eig_checked(&gram, tol.assert_tol)?;
    if ge.min() <= tol.rank_tol * ge.max().max(f64::MIN_POSITIVE) {
        return Err(Error::NotFaithful { lambda_min: ge.min() });
    }
    let g_half = ge.apply(f64::sqrt);
    let g_inv_half = ge.apply(|l| 1.0 / l.sqrt());

    // Left multiplication and adjoint in algebra coordinates.
    let rep_basis: Vec<ComplexMatrix> = b
        .iter()
        .map(|a| {
            let prods: Vec<ComplexMatrix> = b.iter().map(|bj| a.matmul(bj)).collect();
            let l = ComplexMatrix::from_fn(n, n, |i, j| prods[j].hs_inner(&b[i]));
            g_half.matmul(&l).matmul(&g_inv_half)
        })
        .collect();
    let a = ComplexMatrix::from_fn(n, n, |k, i| adj[i].hs_inner(&b[k]));
    let s = AntilinearOp::new(g_half.matmul(&a).matmul(&g_inv_half.conj()));

    let delta = s.adjoint().compose(&s).hermitian_part();
    let de = herm_eig_checked(&delta, tol.assert_tol)?;
    let delta_inv_half = apply_function(&de, ScalarFunction::InvSqrt, tol.rank_tol)?;
    let raw_j = s.after_linear(&delta_inv_half);
    let lj = raw_j.linear_part();
    let j_symmetrization = (lj - &lj.transpose()).fro_norm();
    let j = AntilinearOp::new((lj + &lj.transpose()).scale_real(0.5));

    let unit = ComplexMatrix::identity(d);
    let omega = g_half.matmul(&ComplexMatrix::column(&m.coordinates(&unit)));

    Ok(GNSData {
        algebra: m.clone(),
        state: phi.clone(),
        gns_dim: n,
        lambda_map: g_half,
        lambda_inv: g_inv_half,
        rep_basis,
        omega,
        s,
        delta_spectrum: de.values.clone(),
        delta,
        j,
        j_symmetrization,
    })
}
