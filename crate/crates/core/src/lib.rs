//! Finite-dimensional von Neumann algebras with numerically certified
//! constructions: commutants and block structure, modular theory and
//! standard forms, the quantitative lift of vectors in `M ξ_o` to operators,
//! and weights with their Radon–Nikodym derivatives.

pub mod algebra;
pub mod btlift;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod modular;
pub mod rng;
pub mod weights;

pub use certificate::{Certificate, CertificateSet};
pub use error::{Error, Result};
pub use linalg::{AntilinearOp, ComplexMatrix, Tolerances, C64};
