use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {bound:.3e}")]
    NotHermitian { defect: f64, bound: f64 },

    #[error("eigenvalue {eigenvalue:.6e} lies outside the domain of `{function}`")]
    Domain {
        function: &'static str,
        eigenvalue: f64,
    },

    #[error("operator is singular: smallest singular value {sigma_min:.3e}")]
    Singular { sigma_min: f64 },

    #[error("element lies outside the algebra: projection residual {residual:.3e}")]
    NotInAlgebra { residual: f64 },

    #[error("input is not a projection: defect {defect:.3e}")]
    NotProjection { defect: f64 },

    #[error("state is not faithful on the algebra: minimal eigenvalue {lambda_min:.3e}")]
    NotFaithful { lambda_min: f64 },

    #[error("map is not *-preserving: defect {defect:.3e}")]
    NotStarPreserving { defect: f64 },

    #[error("map is not multiplicative: defect {defect:.3e}")]
    NotMultiplicative { defect: f64 },

    #[error("algebra is not in standard form: {reason}")]
    NotStandard { reason: String },

    #[error("degenerate spectrum after {attempts} attempts: {detail}")]
    Degenerate { attempts: usize, detail: String },

    #[error("witness search failed after {attempts} attempts: {detail}")]
    WitnessSearchFailed { attempts: usize, detail: String },

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("vector {index} is outside span(M ξ_o): residual {residual:.3e} exceeds cap {cap:.3e}")]
    Infeasible { index: usize, residual: f64, cap: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("certificate `{name}` violated: measured {measured:.6e} > bound {bound:.6e}")]
    CertificateViolation {
        name: String,
        measured: f64,
        bound: f64,
    },
}
