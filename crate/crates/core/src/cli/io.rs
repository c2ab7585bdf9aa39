//! Matrices are `{rows, cols, entries}` with row-major `[re, im]` pairs,
//! algebras `{ambient_dim, basis}`. Shortest round-trip decimals keep every
//! double exact.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::report::CertificateRecord;
use super::CliError;
use crate::algebra::VNAlgebra;
use crate::error::Error;
use crate::linalg::{ComplexMatrix, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub ambient_dim: usize,
    pub basis: Vec<ComplexMatrix>,
}

impl AlgebraFile {
    pub fn from_algebra(m: &VNAlgebra) -> Self {
        Self {
            ambient_dim: m.ambient_dim(),
            basis: m.elements().to_vec(),
        }
    }

    /// The span of the unit and `basis`, which must be closed under products
    /// and adjoints to within `assert_tol`.
    pub fn to_algebra(&self, tol: &Tolerances) -> Result<VNAlgebra, Error> {
        let m = VNAlgebra::from_spanning_set(self.ambient_dim, self.basis.iter(), tol)?;
        let defect = m.closure_defect();
        if defect > tol.assert_tol {
            return Err(Error::Structural(format!(
                "basis does not span a *-algebra: closure defect {defect:.3e}"
            )));
        }
        Ok(m)
    }
}

/// A report from `gen` carries its algebra under `summary.algebra`.
#[derive(Deserialize)]
struct GenReport {
    summary: GenSummary,
}

#[derive(Deserialize)]
struct GenSummary {
    algebra: AlgebraFile,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads an algebra file, or the algebra inside a `gen` report.
pub fn read_algebra(path: &Path, tol: &Tolerances) -> Result<VNAlgebra, CliError> {
    let text = read_text(path)?;
    let file = match serde_json::from_str::<AlgebraFile>(&text) {
        Ok(f) => f,
        Err(direct) => match serde_json::from_str::<GenReport>(&text) {
            Ok(r) => r.summary.algebra,
            Err(_) => {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    message: direct.to_string(),
                })
            }
        },
    };
    file.to_algebra(tol).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| io_error(p, source)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.write_all(b"\n"))
                .map_err(|source| io_error(Path::new("<stdout>"), source))
        }
    }
}

pub fn write_csv(path: &Path, records: &[CertificateRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for r in records {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|source| io_error(path, source))
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from(path),
        source,
    }
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_algebra, BlockSpec};

    #[test]
    fn matrix_round_trip_is_exact() {
        let (m, u) = random_algebra(&BlockSpec::new(vec![(2, 1)]).unwrap(), 3).unwrap();
        let text = serde_json::to_string(&u).unwrap();
        assert!(text.starts_with("{\"rows\":2,\"cols\":2,\"entries\":[["));
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, u);
        let file = AlgebraFile::from_algebra(&m);
        let back: AlgebraFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_algebra(&Tolerances::default()).unwrap().dim(), 4);
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        let short = r#"{"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(short).is_err());
        let not_closed = AlgebraFile {
            ambient_dim: 2,
            basis: vec![ComplexMatrix::unit(2, 0, 1)],
        };
        assert!(not_closed.to_algebra(&Tolerances::default()).is_err());
    }
}
