//! Command-line surface.
//!
//! Defaults shown in help are the authoritative ones; seeds have no
//! default anywhere because every stochastic run must be reproducible on
//! purpose, never by accident of wall-clock time.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "levy",
    version,
    about = "Heavy-tailed step sampling, stable densities, walks, and search experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw step lengths from the heavy-tailed step law
    Sample(SampleArgs),
    /// Evaluate the symmetric stable density on a grid of points
    Density(DensityArgs),
    /// Simulate one trajectory and write it out
    Walk(WalkArgs),
    /// Measure the ensemble mean-square displacement and fit its exponent
    Msd(MsdArgs),
    /// Hill-estimate the tail index from fresh step samples
    FitTail(FitTailArgs),
    /// Run the population search on a benchmark objective
    Optimize(OptimizeArgs),
    /// Compare step policies on the double-well escape experiment
    Escape(EscapeArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Tail index of the step law (dimensionless, > 0)
    #[arg(long)]
    pub beta: f64,
    /// Number of steps to draw
    #[arg(long)]
    pub n: usize,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Stable index (dimensionless, in (0, 2])
    #[arg(long)]
    pub beta: f64,
    /// Scale parameter (dimensionless, > 0)
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Evaluation points: comma list `0,0.5,1` or range `start:stop:count`
    #[arg(long = "x-grid")]
    pub x_grid: String,
    /// Evaluation method
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Pick per point: closed form, then series in its tail range, else quadrature
    Auto,
    /// Closed forms only (indices 1 and 2)
    ClosedForm,
    /// Truncated tail series
    Series,
    /// Oscillatory quadrature
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Every jump costs one time unit
    Flight,
    /// A jump of length l costs l / speed
    Walk,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Tail index of the step law (dimensionless, > 0)
    #[arg(long)]
    pub beta: f64,
    /// Number of jumps
    #[arg(long)]
    pub steps: usize,
    /// Spatial dimension
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Time accounting mode
    #[arg(long, value_enum, default_value = "flight")]
    pub mode: ModeArg,
    /// Traversal speed in walk mode (length per time unit)
    #[arg(long, default_value_t = 1.0)]
    pub speed: f64,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MsdArgs {
    /// Tail index of the step law (dimensionless, > 0)
    #[arg(long)]
    pub beta: f64,
    /// Ensemble size (at least 100)
    #[arg(long, default_value_t = 1000)]
    pub walkers: usize,
    /// Spatial dimension
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Time accounting mode
    #[arg(long, value_enum, default_value = "walk")]
    pub mode: ModeArg,
    /// Traversal speed in walk mode (length per time unit)
    #[arg(long, default_value_t = 1.0)]
    pub speed: f64,
    /// First grid time
    #[arg(long = "t-min", default_value_t = 1.0)]
    pub t_min: f64,
    /// Last grid time
    #[arg(long = "t-max", default_value_t = 1000.0)]
    pub t_max: f64,
    /// Number of log-spaced grid times
    #[arg(long = "grid-points", default_value_t = 24)]
    pub grid_points: usize,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitTailArgs {
    /// Tail index to sample at (dimensionless, > 0)
    #[arg(long)]
    pub beta: f64,
    /// Sample size
    #[arg(long)]
    pub n: usize,
    /// Upper order statistics to use (default: round(n^0.7))
    #[arg(long)]
    pub k: Option<usize>,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveArg {
    /// Unbounded quadratic bowl, optimum at the origin
    Bowl,
    /// Rastrigin on [-5.12, 5.12]^d
    Rastrigin,
    /// One-dimensional double well with an escape barrier
    DoubleWell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyArg {
    /// Heavy-tailed step lengths at --beta
    Levy,
    /// Uniform lengths on (0, --lmax]
    Uniform,
    /// Half-normal lengths scaled by --sigma
    Gaussian,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Benchmark objective
    #[arg(long, value_enum, default_value = "rastrigin")]
    pub objective: ObjectiveArg,
    /// Dimension for bowl and rastrigin, default 2 (double-well is always 1)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Step-length policy
    #[arg(long, value_enum, default_value = "levy")]
    pub policy: PolicyArg,
    /// Tail index for the levy policy (dimensionless, > 0)
    #[arg(long, default_value_t = 1.5)]
    pub beta: f64,
    /// Length cap for the uniform policy
    #[arg(long, default_value_t = 1.0)]
    pub lmax: f64,
    /// Length scale for the gaussian policy
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Population size
    #[arg(long, default_value_t = 20)]
    pub walkers: usize,
    /// Iterations after initialisation
    #[arg(long, default_value_t = 1000)]
    pub iterations: usize,
    /// Double-well barrier distance
    #[arg(long = "escape-distance", default_value_t = 2.5)]
    pub escape_distance: f64,
    /// Double-well half-width
    #[arg(long = "well-halfwidth", default_value_t = 1.0)]
    pub well_halfwidth: f64,
    /// Double-well depth
    #[arg(long, default_value_t = 1.0)]
    pub depth: f64,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EscapeArgs {
    /// Cap of the uniform policy under test
    #[arg(long)]
    pub lmax: f64,
    /// Half-width of the far well (barrier sits at 1.25x this)
    #[arg(long = "basin-width")]
    pub basin_width: f64,
    /// Tail index of the levy policy (dimensionless, > 0)
    #[arg(long)]
    pub beta: f64,
    /// Proposals allowed per repeat
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    /// Independent repeats per policy
    #[arg(long, default_value_t = 100)]
    pub repeats: usize,
    /// RNG seed (required: runs are reproducible by contract)
    #[arg(long)]
    pub seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}
