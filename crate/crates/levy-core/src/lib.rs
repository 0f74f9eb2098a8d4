//! Heavy-tailed random walks and the machinery around them.
//!
//! The crate covers five areas that keep showing up together in anomalous
//! transport work:
//!
//! * [`sampler`]: power-law step lengths with closed-form quantiles.
//! * [`stable_density`]: symmetric stable densities by oscillatory
//!   quadrature, asymptotic series, and the two closed forms.
//! * [`flight`] and [`diffusion`]: trajectory simulation under flight and
//!   walk time accounting, ensemble mean-square displacement, and regime
//!   classification.
//! * [`tail_stats`]: Hill tail-index estimation, Kolmogorov-Smirnov
//!   distances, and running-moment diagnostics.
//! * [`optimizer`]: greedy multi-walker search driven by heavy-tailed step
//!   proposals, with basin-escape and optimum-tracking experiments.
//!
//! The crate is `no_std` with `alloc`; the `std` feature (on by default) only
//! adds `std::error::Error` for [`Error`]. All transcendental math routes
//! through `libm`, so results are bit-identical across platforms and between
//! the two configurations.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod diffusion;
pub mod error;
pub mod flight;
mod math;
pub mod optimizer;
pub mod rng;
pub mod sampler;
pub mod stable_density;
pub mod tail_stats;

pub use diffusion::{classify_regime, ensemble_msd, msd_regime, DiffusionRegime, MsdEstimate};
pub use error::Error;
pub use flight::{simulate_trajectory, TimeAccounting, Trajectory};
pub use optimizer::{optimize, BoxBounds, Objective, RunConfig, RunResult, StepPolicy};
pub use rng::{UniformSource, UnitUniform};
pub use sampler::{LevyIndex, StepDistribution};
pub use stable_density::{SeriesTruncation, StableDensitySpec};
pub use tail_stats::{
    fit_step_tail, hill_estimate, ks_statistic, running_moments, HillEstimate, RunningMoments,
};
