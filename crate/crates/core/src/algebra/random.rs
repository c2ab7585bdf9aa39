//! Seeded corpus of algebras `U (⊕ M_n ⊗ 1_m) U*`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{generic_self_adjoint, VNAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances, C64};
use crate::rng::{gaussian, haar_unitary, seeded};

/// Upper bound on the ambient dimension of generated algebras.
pub const MAX_AMBIENT_DIM: usize = 64;

/// Block shape list `[(n, m), …]` for `⊕ M_n ⊗ 1_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSpec(pub Vec<(usize, usize)>);

impl BlockSpec {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("block spec is empty".into()));
        }
        if let Some(&(n, m)) = blocks.iter().find(|&&(n, m)| n == 0 || m == 0) {
            return Err(Error::InvalidArgument(format!("block ({n},{m}) has a zero size")));
        }
        let s = Self(blocks);
        if s.ambient_dim() > MAX_AMBIENT_DIM {
            return Err(Error::InvalidArgument(format!(
                "ambient dimension {} exceeds {MAX_AMBIENT_DIM}",
                s.ambient_dim()
            )));
        }
        Ok(s)
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// `Σ n·m`
    pub fn ambient_dim(&self) -> usize {
        self.0.iter().map(|&(n, m)| n * m).sum()
    }

    /// `Σ n²`
    pub fn algebra_dim(&self) -> usize {
        self.0.iter().map(|&(n, _)| n * n).sum()
    }

    /// `Σ m²`
    pub fn commutant_dim(&self) -> usize {
        self.0.iter().map(|&(_, m)| m * m).sum()
    }

    /// Sorted copy, the canonical order used by [`super::CentralDecomposition`].
    pub fn sorted(&self) -> Self {
        let mut b = self.0.clone();
        b.sort_unstable();
        Self(b)
    }

    /// Shape of the commutant: `(n, m) ↦ (m, n)`.
    pub fn swapped(&self) -> Self {
        Self(self.0.iter().map(|&(n, m)| (m, n)).collect())
    }

    pub fn is_balanced(&self) -> bool {
        self.0.iter().all(|&(n, m)| n == m)
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(n, m)| format!("({n},{m})")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BlockSpec {
    type Err = Error;

    /// Parses `"(2,3),(1,1)"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidArgument(format!("malformed block spec {s:?}; expected e.g. \"(2,3),(1,1)\""));
        let mut blocks = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let (pair, tail) = body.split_at(close);
            let (n, m) = pair.split_once(',').ok_or_else(bad)?;
            let n: usize = n.parse().map_err(|_| bad())?;
            let m: usize = m.parse().map_err(|_| bad())?;
            blocks.push((n, m));
            rest = &tail[1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        Self::new(blocks)
    }
}

/// Canonical basis of `⊕ M_n ⊗ 1_m` on consecutive coordinates: matrix
/// units `e_ab ⊗ 1_m / √m`.
fn canonical_basis(spec: &BlockSpec) -> Vec<ComplexMatrix> {
    let d = spec.ambient_dim();
    let mut out = Vec::with_capacity(spec.algebra_dim());
    let mut offset = 0;
    for &(n, m) in spec.blocks() {
        let w = 1.0 / (m as f64).sqrt();
        for a in 0..n {
            for b in 0..n {
                let mut e = ComplexMatrix::zeros(d, d);
                for beta in 0..m {
                    e[(offset + a * m + beta, offset + b * m + beta)] = C64::new(w, 0.0);
                }
                out.push(e);
            }
        }
        offset += n * m;
    }
    out
}

/// `U (⊕ M_n ⊗ 1_m) U*` with a seeded Haar-random `U`, returned alongside `U`.
pub fn random_algebra(spec: &BlockSpec, seed: u64) -> Result<(VNAlgebra, ComplexMatrix)> {
    let d = spec.ambient_dim();
    let mut rng = seeded(seed);
    let u = haar_unitary(d, &mut rng);
    let ua = u.adjoint();
    let conjugated: Vec<ComplexMatrix> = canonical_basis(spec)
        .iter()
        .map(|e| u.matmul(e).matmul(&ua))
        .collect();
    let alg = VNAlgebra::from_spanning_set(d, conjugated.iter(), &Tolerances::default())?;
    Ok((alg, u))
}

/// `⊕ M_n ⊗ 1_m` on consecutive coordinates, without rotation.
pub fn canonical_algebra(spec: &BlockSpec) -> Result<VNAlgebra> {
    VNAlgebra::from_spanning_set(spec.ambient_dim(), canonical_basis(spec).iter(), &Tolerances::default())
}

/// One to three blocks with `n, m ≤ max_side`, redrawn until `Σ n·m ≤ max_dim`.
pub fn random_spec(max_dim: usize, max_side: usize, rng: &mut impl Rng) -> Result<BlockSpec> {
    if max_dim == 0 || max_side == 0 {
        return Err(Error::InvalidArgument("random_spec needs max_dim, max_side ≥ 1".into()));
    }
    loop {
        let count = rng.random_range(1..=3);
        let blocks: Vec<(usize, usize)> = (0..count)
            .map(|_| (rng.random_range(1..=max_side), rng.random_range(1..=max_side)))
            .collect();
        if blocks.iter().map(|&(n, m)| n * m).sum::<usize>() <= max_dim.min(MAX_AMBIENT_DIM) {
            return BlockSpec::new(blocks);
        }
    }
}

/// `Σ g_i B_i` with complex Gaussian coefficients.
pub fn random_element(m: &VNAlgebra, rng: &mut impl Rng) -> ComplexMatrix {
    let coeffs: Vec<C64> = (0..m.dim()).map(|_| gaussian(rng)).collect();
    m.element(&coeffs)
}

pub fn random_self_adjoint(m: &VNAlgebra, rng: &mut impl Rng) -> ComplexMatrix {
    generic_self_adjoint(m.basis(), rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let s: BlockSpec = " (2, 3),(1,1) ".parse().unwrap();
        assert_eq!(s.blocks(), &[(2, 3), (1, 1)]);
        assert_eq!(s.to_string(), "(2,3),(1,1)");
        assert!("(2,3".parse::<BlockSpec>().is_err());
        assert!("(0,1)".parse::<BlockSpec>().is_err());
        assert!("(9,9)".parse::<BlockSpec>().is_err());
    }

    #[test]
    fn bookkeeping() {
        let s = BlockSpec::new(vec![(2, 2), (3, 1)]).unwrap();
        assert_eq!(s.ambient_dim(), 7);
        assert_eq!(s.algebra_dim(), 13);
        assert_eq!(s.commutant_dim(), 5);
    }

    #[test]
    fn random_algebra_is_a_closed_algebra() {
        let s = BlockSpec::new(vec![(2, 2), (1, 3)]).unwrap();
        let (m, u) = random_algebra(&s, 4).unwrap();
        assert_eq!(m.dim(), 5);
        assert!(u.is_unitary(1e-12));
        assert!(m.closure_defect() < 1e-10);
    }

    #[test]
    fn random_specs_respect_limits() {
        let mut rng = crate::rng::seeded(5);
        for _ in 0..50 {
            let s = random_spec(12, 4, &mut rng).unwrap();
            assert!(s.ambient_dim() <= 12);
            assert!(s.blocks().iter().all(|&(n, m)| n <= 4 && m <= 4));
        }
        let c = canonical_algebra(&"(2,1)".parse().unwrap()).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(c.closure_defect() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let s = BlockSpec::new(vec![(2, 1)]).unwrap();
        let (_, u1) = random_algebra(&s, 9).unwrap();
        let (_, u2) = random_algebra(&s, 9).unwrap();
        let (_, u3) = random_algebra(&s, 10).unwrap();
        assert_eq!(u1, u2);
        assert_ne!(u1, u3);
    }
}
