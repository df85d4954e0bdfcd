//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ncop",
    version,
    about = "Schur-type parameters, moment kernels and orthogonal polynomials"
)]
pub struct Cli {
    /// Tolerance for the checked identities (each command has its own default).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input file (.json, otherwise CSV). Without it a seeded sample is used.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Table written in CSV mode (defaults to the first one).
    #[arg(long, global = true)]
    pub table: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// One variable, zero diagonal, unit off-diagonal: the semicircle law.
    Semicircle,
    /// Free semicircular family on the chosen alphabet.
    Free,
}

#[derive(Args, Debug, Clone)]
pub struct Sample1D {
    /// Horizon of sampled parameters.
    #[arg(long, default_value_t = 8)]
    pub horizon: usize,
    /// Largest modulus of sampled parameters.
    #[arg(long, default_value_t = 0.9)]
    pub max_modulus: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SampleWords {
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0.5)]
    pub max_modulus: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parameters to moment kernel, with the inverse map as a check.
    Params2moments(Sample1D),
    /// Moment kernel to parameters, with the forward map as a check.
    Moments2params(Sample1D),
    /// Orthonormal polynomials by recurrence, bordered determinants and Gram-Schmidt.
    Orthopoly {
        #[command(flatten)]
        sample: Sample1D,
        /// Level of the family.
        #[arg(long, default_value_t = 0)]
        l: usize,
    },
    /// Symbolic lattice expansion of a normalized kernel entry.
    Catalan {
        /// Offset of the expanded entry.
        #[arg(long, default_value_t = 3)]
        l: usize,
    },
    /// Determinant ratios and the two Szego-type limits.
    SzegoLimits {
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        #[arg(long, default_value_t = 0.6)]
        max_modulus: f64,
    },
    /// Triangular factor K = T^* T of the moment kernel.
    SpectralFactor(Sample1D),
    /// Gegenbauer closed forms against quadrature and Gram-Schmidt.
    Gegenbauer {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Largest level.
        #[arg(long, default_value_t = 4)]
        l: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Stationary kernel on words from word parameters.
    CtKernel(SampleWords),
    /// Truncated isometries built from word parameters.
    CuntzCheck {
        #[command(flatten)]
        sample: SampleWords,
        /// Also write every isometry as a matrix table.
        #[arg(long)]
        emit_u: bool,
    },
    /// Matrix-unit operator tuples attached to words.
    MatrixUnits {
        /// A single word; all nonempty words up to --max-len otherwise.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        dim_factor: usize,
    },
    /// Jacobi family to moments and back.
    Favard {
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Positivity and reproducing identities of the Szego kernels.
    SzegoKernel {
        #[arg(long, default_value_t = 6)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Params2moments(_) => "params2moments",
            Command::Moments2params(_) => "moments2params",
            Command::Orthopoly { .. } => "orthopoly",
            Command::Catalan { .. } => "catalan",
            Command::SzegoLimits { .. } => "szego-limits",
            Command::SpectralFactor(_) => "spectral-factor",
            Command::Gegenbauer { .. } => "gegenbauer",
            Command::CtKernel(_) => "ct-kernel",
            Command::CuntzCheck { .. } => "cuntz-check",
            Command::MatrixUnits { .. } => "matrix-units",
            Command::Favard { .. } => "favard",
            Command::SzegoKernel { .. } => "szego-kernel",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            Command::Params2moments(_) | Command::Moments2params(_) => 1e-9,
            Command::Orthopoly { .. } => 1e-8,
            Command::Catalan { .. } => 1e-10,
            Command::SzegoLimits { .. } => 1e-9,
            Command::SpectralFactor(_) => 1e-10,
            Command::Gegenbauer { .. } => 1e-7,
            Command::CtKernel(_) => 1e-9,
            Command::CuntzCheck { .. } => 1e-10,
            Command::MatrixUnits { .. } => 1e-14,
            Command::Favard { .. } => 1e-8,
            Command::SzegoKernel { .. } => 1e-10,
        }
    }
}
