use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::args::Flags;
use super::{io, CliError};
use crate::algebra::{canonical_algebra, random_algebra, BlockSpec, VNAlgebra};
use crate::btlift::{ApproximantMode, DEFAULT_DEPTH};
use crate::linalg::{ComplexMatrix, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gen,
    #[default]
    Info,
    Commutant,
    Standard,
    Bt,
    Gamma,
    Weights,
    Suite,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Gen => "gen",
            Kind::Info => "info",
            Kind::Commutant => "commutant",
            Kind::Standard => "standard",
            Kind::Bt => "bt",
            Kind::Gamma => "gamma",
            Kind::Weights => "weights",
            Kind::Suite => "suite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaSource {
    /// `γ_k` from the schedule on `α_k = ‖ξ_k‖²`.
    Schedule,
    Constant(f64),
}

impl FromStr for GammaSource {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "schedule" {
            return Ok(Self::Schedule);
        }
        s.strip_prefix("const:")
            .and_then(|v| v.parse().ok())
            .map(Self::Constant)
            .ok_or_else(|| CliError::Usage(format!("gamma source `{s}` (expected schedule or const:<gamma>)")))
    }
}

/// Everything that determines a report. Two equal scenarios give byte-equal
/// report payloads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub spec: Option<String>,
    pub input: Option<PathBuf>,
    pub seed: Option<u64>,
    pub rank_tol: f64,
    pub assert_tol: f64,
    pub retry_seeds: usize,
    pub depth: usize,
    pub mode: String,
    pub k: usize,
    pub gamma: String,
    pub alphas: Option<Vec<f64>>,
    pub remainder: Option<f64>,
    pub max_dim: usize,
}

pub const DEFAULT_K: usize = 6;
pub const DEFAULT_MAX_DIM: usize = 12;

impl Default for Scenario {
    fn default() -> Self {
        let tol = Tolerances::default();
        Self {
            kind: Kind::default(),
            id: None,
            spec: None,
            input: None,
            seed: None,
            rank_tol: tol.rank_tol,
            assert_tol: tol.assert_tol,
            retry_seeds: tol.retry_seeds,
            depth: DEFAULT_DEPTH,
            mode: "scheduled:0.5".into(),
            k: DEFAULT_K,
            gamma: "schedule".into(),
            alphas: None,
            remainder: None,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl Scenario {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }

    pub fn with_spec(mut self, spec: &str) -> Self {
        self.spec = Some(spec.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// TOML unless the extension is `.json`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = io::read_text(path)?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|message| CliError::Parse {
            path: path.to_path_buf(),
            message,
        })
    }

    /// The `--scenario` file (if any) overlaid with every flag that is set.
    /// The subcommand always decides the kind.
    pub fn from_flags(kind: Kind, f: &Flags) -> Result<Self, CliError> {
        let mut s = match &f.scenario {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        s.kind = kind;
        if f.spec.is_some() {
            s.spec = f.spec.clone();
        }
        if f.input.is_some() {
            s.input = f.input.clone();
        }
        if f.seed.is_some() {
            s.seed = f.seed;
        }
        if f.alphas.is_some() {
            s.alphas = f.alphas.clone();
        }
        if f.remainder.is_some() {
            s.remainder = f.remainder;
        }
        s.rank_tol = f.tol_rank.unwrap_or(s.rank_tol);
        s.assert_tol = f.tol_assert.unwrap_or(s.assert_tol);
        s.depth = f.depth.unwrap_or(s.depth);
        s.k = f.k.unwrap_or(s.k);
        s.max_dim = f.max_dim.unwrap_or(s.max_dim);
        if let Some(m) = &f.mode {
            s.mode = m.clone();
        }
        if let Some(g) = &f.gamma {
            s.gamma = g.clone();
        }
        s.validate()?;
        Ok(s)
    }

    /// Checks every field that can be checked without running anything.
    pub fn validate(&self) -> Result<(), CliError> {
        self.tolerances()?;
        self.approximant_mode()?;
        self.gamma_source()?;
        self.block_spec()?;
        if self.spec.is_some() && self.input.is_some() {
            return Err(CliError::Usage("give either --spec or --in, not both".into()));
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        Ok(Tolerances::new(self.rank_tol, self.assert_tol, self.retry_seeds)?)
    }

    pub fn approximant_mode(&self) -> Result<ApproximantMode, CliError> {
        Ok(self.mode.parse()?)
    }

    pub fn gamma_source(&self) -> Result<GammaSource, CliError> {
        self.gamma.parse()
    }

    pub fn block_spec(&self) -> Result<Option<BlockSpec>, CliError> {
        Ok(self.spec.as_deref().map(str::parse).transpose()?)
    }

    pub fn require_seed(&self) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::Usage(format!("`{}` is randomized and needs --seed", self.kind)))
    }

    /// The algebra named by `--in` or `--spec`. A spec with a seed is rotated
    /// by a seeded Haar unitary (returned too); without a seed it stays on
    /// consecutive coordinates.
    pub fn algebra(&self) -> Result<(VNAlgebra, Option<ComplexMatrix>), CliError> {
        let tol = self.tolerances()?;
        if let Some(path) = &self.input {
            return Ok((io::read_algebra(path, &tol)?, None));
        }
        let spec = self
            .block_spec()?
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --spec or --in", self.kind)))?;
        match self.seed {
            Some(seed) => {
                let (m, u) = random_algebra(&spec, seed)?;
                Ok((m, Some(u)))
            }
            None => Ok((canonical_algebra(&spec)?, None)),
        }
    }
}

