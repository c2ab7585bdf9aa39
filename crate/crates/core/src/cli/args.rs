use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::Kind;

#[derive(Debug, Parser)]
#[command(name = "vnkit", version, about = "Certified experiments on finite-dimensional von Neumann algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded algebra `U (⊕ M_n ⊗ 1_m) U*` and write it out.
    Gen(Flags),
    /// Block structure, centre, cyclic and separating vectors.
    Info(Flags),
    /// Commutant, double commutant and the cyclic/separating duality.
    Commutant(Flags),
    /// Standardness verdict, the antilinear criterion, GNS and the Okayasu correction.
    Standard(Flags),
    /// Lift a seeded vector sequence to operators with the quantitative bounds.
    Bt(Flags),
    /// Weights `γ_k` for a sequence `α_k` and the telescoping identity.
    Gamma(Flags),
    /// Trace, Radon–Nikodym derivative and the sup ratio for a seeded state.
    Weights(Flags),
    /// The whole corpus, in parallel.
    Suite(Flags),
}

impl Command {
    pub fn parts(&self) -> (Kind, &Flags) {
        match self {
            Command::Gen(f) => (Kind::Gen, f),
            Command::Info(f) => (Kind::Info, f),
            Command::Commutant(f) => (Kind::Commutant, f),
            Command::Standard(f) => (Kind::Standard, f),
            Command::Bt(f) => (Kind::Bt, f),
            Command::Gamma(f) => (Kind::Gamma, f),
            Command::Weights(f) => (Kind::Weights, f),
            Command::Suite(f) => (Kind::Suite, f),
        }
    }
}

/// Shared flags. Anything set here overrides the `--scenario` file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Scenario file (TOML, or JSON with a `.json` extension).
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Block shape, e.g. "(2,3),(1,1)".
    #[arg(long)]
    pub spec: Option<String>,
    /// Algebra file `{ambient_dim, basis}`, or a report written by `gen`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Certificate table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    #[arg(long)]
    pub tol_assert: Option<f64>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// exact | scheduled | scheduled:<beta>
    #[arg(long)]
    pub mode: Option<String>,
    /// Sequence length `K`.
    #[arg(long = "k")]
    pub k: Option<usize>,
    /// Largest ambient dimension in the suite corpus.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// schedule | const:<gamma>
    #[arg(long)]
    pub gamma: Option<String>,
    /// Comma-separated `α_k` for `gamma`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alphas: Option<Vec<f64>>,
    /// Tail sum `Σ_{j>K} α_j` for `gamma`.
    #[arg(long)]
    pub remainder: Option<f64>,
}
