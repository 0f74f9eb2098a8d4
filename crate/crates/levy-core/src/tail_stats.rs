//! Tail-index estimation and distributional diagnostics for step samples.
//!
//! The step law has survival function `(1 + l)^(-beta)`, so the shifted
//! variable `1 + l` is exactly Pareto with index `beta` and the Hill
//! estimator applied to shifted samples is unbiased at every order count.
//! [`fit_step_tail`] bundles that idiom; [`hill_estimate`] is the generic
//! estimator for anything with a Pareto-type upper tail.
//!
//! The rest of the module is supporting diagnostics: a two-sided
//! Kolmogorov-Smirnov statistic against an arbitrary reference cdf, and
//! single-pass running moments for watching whether empirical means and
//! variances settle or wander as the sample grows.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::rng::UniformSource;
use crate::sampler::{LevyIndex, StepDistribution};

/// A Hill fit of the upper tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillEstimate {
    /// Reciprocal of the mean log-excess over the `k` largest samples.
    pub estimated_index: f64,
    /// Asymptotic standard error, `estimated_index / sqrt(k)`.
    pub standard_error: f64,
    /// Number of upper order statistics used.
    pub k: usize,
    /// Total sample count.
    pub n: usize,
}

/// Default number of upper order statistics: `round(n^0.7)`, clamped to
/// `[1, n - 1]`.
///
/// The exponent trades variance (more orders) against bias from the
/// non-tail bulk (fewer); for the exact-Pareto shifted samples the bias
/// term vanishes and the choice is generous on purpose.
pub fn default_order_count(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let raw = math::round(math::pow(n as f64, 0.7));
    let max = (n - 1) as f64;
    raw.clamp(1.0, max) as usize
}

/// Hill estimator over the `k` largest of `samples`.
///
/// All samples must be positive and finite. Fails if the top `k + 1`
/// order statistics are tied (zero mean log-excess has no reciprocal).
pub fn hill_estimate(samples: &[f64], k: usize) -> Result<HillEstimate, Error> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::Parameter("tail fit needs at least two samples"));
    }
    if k == 0 || k >= n {
        return Err(Error::Parameter("order count must satisfy 1 <= k < n"));
    }
    if let Some(&bad) = samples.iter().find(|s| !s.is_finite() || **s <= 0.0) {
        return Err(Error::Domain {
            what: "tail samples must be positive and finite",
            value: bad,
        });
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let ln_floor = math::ln(sorted[k]);
    let mut excess = 0.0;
    for &y in &sorted[..k] {
        excess += math::ln(y) - ln_floor;
    }
    let mean_excess = excess / k as f64;
    if mean_excess <= 0.0 {
        return Err(Error::Parameter("upper order statistics are tied"));
    }
    let estimated_index = 1.0 / mean_excess;
    Ok(HillEstimate {
        estimated_index,
        standard_error: estimated_index / math::sqrt(k as f64),
        k,
        n,
    })
}

/// Draws `n` steps at the given index and Hill-fits the shifted samples
/// `1 + l`.
///
/// `k` defaults to [`default_order_count`]. The draw consumes one stream
/// seeded directly from `seed`.
pub fn fit_step_tail(
    index: LevyIndex,
    n: usize,
    k: Option<usize>,
    seed: u64,
) -> Result<HillEstimate, Error> {
    if n < 2 {
        return Err(Error::Parameter("tail fit needs at least two samples"));
    }
    let k = k.unwrap_or_else(|| default_order_count(n));
    let dist = StepDistribution::new(index);
    let mut src = UniformSource::new(seed);
    let mut shifted = Vec::with_capacity(n);
    for _ in 0..n {
        shifted.push(1.0 + dist.sample_step(&mut src));
    }
    hill_estimate(&shifted, k)
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
///
/// `cdf` must be a nondecreasing map into `[0, 1]`; that is the caller's
/// contract and only the range is checked. Samples may arrive in any
/// order.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64, Error> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::Parameter("ks statistic needs at least one sample"));
    }
    if let Some(&bad) = samples.iter().find(|s| !s.is_finite()) {
        return Err(Error::Domain {
            what: "ks samples must be finite",
            value: bad,
        });
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain {
                what: "reference cdf left [0, 1]",
                value: f,
            });
        }
        let above = (i + 1) as f64 / nf - f;
        let below = f - i as f64 / nf;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Asymptotic two-sided KS critical value at significance `alpha`:
/// `sqrt(-ln(alpha / 2) / (2 n))`.
pub fn ks_critical_value(n: usize, alpha: f64) -> Result<f64, Error> {
    if n == 0 {
        return Err(Error::Parameter("ks critical value needs n >= 1"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            what: "significance level must lie in (0, 1)",
            value: alpha,
        });
    }
    Ok(math::sqrt(-math::ln(alpha / 2.0) / (2.0 * n as f64)))
}

/// Single-pass mean and variance accumulator (Welford's update).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Mean of everything pushed so far; zero when empty.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; `None` below two observations.
    pub fn sample_variance(&self) -> Option<f64> {
        if self.count < 2 {
            None
        } else {
            Some(self.m2 / (self.count - 1) as f64)
        }
    }
}

/// Moments of one growing sample, recorded at a checkpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentCheckpoint {
    pub n: u64,
    pub mean: f64,
    pub variance: f64,
}

fn validate_checkpoints(checkpoints: &[usize]) -> Result<(), Error> {
    if checkpoints.is_empty() {
        return Err(Error::Parameter("moment trace needs at least one checkpoint"));
    }
    if checkpoints[0] < 2 {
        return Err(Error::Parameter("first checkpoint must be at least two"));
    }
    for w in checkpoints.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Parameter("checkpoints must be strictly increasing"));
        }
    }
    Ok(())
}

/// Prefix means and variances of `samples` at each checkpoint count.
///
/// Checkpoints must be strictly increasing, start at two or more (variance
/// needs that), and stay within the sample length. All prefixes share the
/// one underlying sequence, which is the point when watching for
/// stabilisation.
pub fn running_moments(
    samples: &[f64],
    checkpoints: &[usize],
) -> Result<Vec<MomentCheckpoint>, Error> {
    validate_checkpoints(checkpoints)?;
    if *checkpoints.last().unwrap() > samples.len() {
        return Err(Error::Parameter("checkpoints must not exceed the sample count"));
    }
    let mut moments = RunningMoments::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut taken = 0usize;
    for &target in checkpoints {
        for &x in &samples[taken..target] {
            moments.push(x);
        }
        taken = target;
        out.push(MomentCheckpoint {
            n: moments.count(),
            mean: moments.mean(),
            variance: moments.sample_variance().unwrap(),
        });
    }
    Ok(out)
}

/// Draws one stream of steps and records running moments at each
/// checkpoint count, without materialising the sample.
///
/// Checkpoint rules are those of [`running_moments`].
pub fn moment_trace(
    index: LevyIndex,
    checkpoints: &[usize],
    seed: u64,
) -> Result<Vec<MomentCheckpoint>, Error> {
    validate_checkpoints(checkpoints)?;
    let dist = StepDistribution::new(index);
    let mut src = UniformSource::new(seed);
    let mut moments = RunningMoments::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut drawn = 0usize;
    for &target in checkpoints {
        while drawn < target {
            moments.push(dist.sample_step(&mut src));
            drawn += 1;
        }
        out.push(MomentCheckpoint {
            n: moments.count(),
            mean: moments.mean(),
            variance: moments.sample_variance().unwrap(),
        });
    }
    Ok(out)
}
