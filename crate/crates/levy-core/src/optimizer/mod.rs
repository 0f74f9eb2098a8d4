//! Greedy stochastic search with pluggable step-length policies.
//!
//! The search is deliberately primitive: a population of independent
//! walkers, each proposing one jump per iteration and accepting only
//! strict improvements. There is no temperature, no population coupling,
//! no adaptation. That bareness is the point: any difference in behaviour
//! between runs comes from the step-length law alone, so the optimizer
//! doubles as an instrument for comparing heavy-tailed proposals against
//! light-tailed ones on the same footing.
//!
//! Determinism contract: walker `w` owns the derived stream `w` of the run
//! seed, walkers are stepped and reduced in index order, and every policy
//! consumes a fixed number of draws per proposal at a given dimension.
//! Rerunning a configuration reproduces the result bit for bit.

pub mod experiments;
pub mod objectives;

use alloc::vec::Vec;

use crate::error::Error;
use crate::flight::unit_direction_into;
use crate::rng::{UniformSource, UnitUniform};
use crate::sampler::{LevyIndex, StepDistribution};

/// An objective function over a fixed-dimension real domain.
pub trait Objective {
    fn dimension(&self) -> usize;

    /// Objective value; lower is better. Non-finite returns quarantine the
    /// walker that proposed them.
    fn evaluate(&self, x: &[f64]) -> f64;

    /// Box constraints, if the domain has them.
    fn bounds(&self) -> Option<BoxBounds> {
        None
    }

    /// The global optimum when known in closed form, for tests and
    /// reporting.
    fn known_optimum(&self) -> Option<(Vec<f64>, f64)> {
        None
    }
}

/// Axis-aligned box constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::Parameter("bounds need matching nonempty axis lists"));
        }
        for (&lo, &hi) in lower.iter().zip(&upper) {
            if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
                return Err(Error::Parameter("each axis needs finite lower < upper"));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Cube `[-half, half]^dimension`.
    pub fn symmetric(dimension: usize, half: f64) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::Parameter("dimension must be at least 1"));
        }
        if !(half > 0.0) || !half.is_finite() {
            return Err(Error::Parameter("half-width must be positive and finite"));
        }
        Ok(Self {
            lower: alloc::vec![-half; dimension],
            upper: alloc::vec![half; dimension],
        })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.lower.len()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&lo, &hi))| lo <= c && c <= hi)
    }

    /// Folds each coordinate back into its interval by reflection at the
    /// faces (triangle wave), so an overshooting jump lands inside instead
    /// of clamping onto the boundary.
    pub fn reflect_into(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.lower.len());
        for (c, (&lo, &hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            let width = hi - lo;
            let period = 2.0 * width;
            let mut t = (*c - lo) % period;
            if t < 0.0 {
                t += period;
            }
            *c = if t <= width { lo + t } else { lo + period - t };
        }
    }

    /// Uniform point in the box.
    pub fn sample_interior<S: UnitUniform>(&self, src: &mut S) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| lo + (hi - lo) * src.next_unit())
            .collect()
    }
}

/// Step-length law used for proposals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepPolicy {
    /// Heavy-tailed lengths from the step distribution at `index`.
    Levy { index: LevyIndex },
    /// Uniform lengths on `(0, l_max]`: hard-capped reach.
    Uniform { l_max: f64 },
    /// Half-normal lengths `sigma * |z|`.
    Gaussian { sigma: f64 },
}

impl StepPolicy {
    pub fn levy(index: LevyIndex) -> Self {
        StepPolicy::Levy { index }
    }

    pub fn uniform(l_max: f64) -> Result<Self, Error> {
        if !(l_max > 0.0) || !l_max.is_finite() {
            return Err(Error::Domain {
                what: "uniform step cap must be positive and finite",
                value: l_max,
            });
        }
        Ok(StepPolicy::Uniform { l_max })
    }

    pub fn gaussian(sigma: f64) -> Result<Self, Error> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain {
                what: "gaussian step scale must be positive and finite",
                value: sigma,
            });
        }
        Ok(StepPolicy::Gaussian { sigma })
    }

    pub fn name(&self) -> &'static str {
        match self {
            StepPolicy::Levy { .. } => "levy",
            StepPolicy::Uniform { .. } => "uniform",
            StepPolicy::Gaussian { .. } => "gaussian",
        }
    }

    /// Draws one step length. Strictly positive under every policy; the
    /// draw count per call is fixed per policy (one, except two for
    /// gaussian).
    pub fn draw_length<S: UnitUniform>(&self, src: &mut S) -> f64 {
        match self {
            StepPolicy::Levy { index } => StepDistribution::new(*index).sample_step(src),
            StepPolicy::Uniform { l_max } => l_max * src.next_unit(),
            StepPolicy::Gaussian { sigma } => {
                let (z, _) = crate::rng::standard_normal_pair(src);
                let mag = if z == 0.0 { f64::MIN_POSITIVE } else { crate::math::abs(z) };
                sigma * mag
            }
        }
    }
}

/// Proposes one jump from `position`: a policy-drawn length along an
/// isotropic direction, reflected into `bounds` when given.
pub fn propose_step<S: UnitUniform>(
    position: &[f64],
    policy: StepPolicy,
    bounds: Option<&BoxBounds>,
    src: &mut S,
) -> Vec<f64> {
    let l = policy.draw_length(src);
    let mut direction = alloc::vec![0.0; position.len()];
    unit_direction_into(src, &mut direction);
    let mut candidate: Vec<f64> = position
        .iter()
        .zip(&direction)
        .map(|(&p, &u)| p + l * u)
        .collect();
    if let Some(b) = bounds {
        b.reflect_into(&mut candidate);
    }
    candidate
}

/// One member of the search population.
#[derive(Debug, Clone, PartialEq)]
pub struct Walker {
    pub position: Vec<f64>,
    pub value: f64,
    /// Set once the objective returns a non-finite value for this walker;
    /// a quarantined walker keeps its last good state and stops stepping.
    pub quarantined: bool,
}

/// What one proposal did to one walker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Accepted,
    Rejected,
    Quarantined,
}

/// Proposes and greedily accepts one step for `walker`.
pub fn step_walker<O: Objective + ?Sized, S: UnitUniform>(
    objective: &O,
    policy: StepPolicy,
    bounds: Option<&BoxBounds>,
    walker: &mut Walker,
    src: &mut S,
) -> StepOutcome {
    let candidate = propose_step(&walker.position, policy, bounds, src);
    let value = objective.evaluate(&candidate);
    if !value.is_finite() {
        walker.quarantined = true;
        return StepOutcome::Quarantined;
    }
    if value < walker.value {
        walker.position = candidate;
        walker.value = value;
        StepOutcome::Accepted
    } else {
        StepOutcome::Rejected
    }
}

/// Population size, iteration budget, seed, and direction for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub n_walkers: usize,
    pub n_iterations: usize,
    pub seed: u64,
    /// Maximize instead of minimize. The search is run on the negated
    /// objective and reported in true values, so the logged best climbs
    /// instead of falling.
    pub maximize: bool,
}

impl RunConfig {
    /// Minimization at the given sizes and seed.
    pub fn new(n_walkers: usize, n_iterations: usize, seed: u64) -> Self {
        Self {
            n_walkers,
            n_iterations,
            seed,
            maximize: false,
        }
    }
}

/// Best state per iteration, for run logs.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRow {
    pub iteration: usize,
    pub best_value: f64,
    pub best_position: Vec<f64>,
}

/// Outcome of a full run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_value: f64,
    /// Objective evaluations spent, initialisation included.
    pub evaluations: u64,
    /// Walkers quarantined by the end.
    pub quarantined: usize,
    /// Row 0 records the state right after initialisation, row `i` the
    /// state after iteration `i`.
    pub log: Vec<LogRow>,
}

struct Negated<'a, O: ?Sized>(&'a O);

impl<O: Objective + ?Sized> Objective for Negated<'_, O> {
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        -self.0.evaluate(x)
    }

    fn bounds(&self) -> Option<BoxBounds> {
        self.0.bounds()
    }
}

/// Runs the full population search.
///
/// Bounded objectives initialise walkers uniformly inside the box;
/// unbounded ones start from standard-normal offsets around the origin. A
/// walker whose very first evaluation is non-finite is quarantined on the
/// spot. Maximization runs the same machinery on the negated objective
/// and reports true values.
pub fn optimize<O: Objective + ?Sized>(
    objective: &O,
    policy: StepPolicy,
    config: RunConfig,
) -> Result<RunResult, Error> {
    if config.maximize {
        let mut result = run_minimizing(&Negated(objective), policy, config)?;
        result.best_value = -result.best_value;
        for row in &mut result.log {
            row.best_value = -row.best_value;
        }
        Ok(result)
    } else {
        run_minimizing(objective, policy, config)
    }
}

fn run_minimizing<O: Objective + ?Sized>(
    objective: &O,
    policy: StepPolicy,
    config: RunConfig,
) -> Result<RunResult, Error> {
    let dimension = objective.dimension();
    if dimension == 0 {
        return Err(Error::Parameter("objective dimension must be at least 1"));
    }
    if config.n_walkers == 0 {
        return Err(Error::Parameter("population needs at least one walker"));
    }
    let bounds = objective.bounds();
    if let Some(b) = &bounds {
        if b.dimension() != dimension {
            return Err(Error::Parameter("bounds dimension disagrees with the objective"));
        }
    }

    let mut walkers: Vec<Walker> = Vec::with_capacity(config.n_walkers);
    let mut streams: Vec<UniformSource> = Vec::with_capacity(config.n_walkers);
    let mut evaluations = 0u64;
    for w in 0..config.n_walkers {
        let mut src = UniformSource::stream(config.seed, w as u64);
        let position = match &bounds {
            Some(b) => b.sample_interior(&mut src),
            None => {
                let mut p = alloc::vec![0.0; dimension];
                for pair in p.chunks_mut(2) {
                    let (a, b) = crate::rng::standard_normal_pair(&mut src);
                    pair[0] = a;
                    if pair.len() == 2 {
                        pair[1] = b;
                    }
                }
                p
            }
        };
        let value = objective.evaluate(&position);
        evaluations += 1;
        walkers.push(Walker {
            position,
            value,
            quarantined: !value.is_finite(),
        });
        streams.push(src);
    }

    let mut log = Vec::with_capacity(config.n_iterations + 1);
    push_best_row(&mut log, 0, &walkers)?;

    for iteration in 1..=config.n_iterations {
        for (walker, src) in walkers.iter_mut().zip(&mut streams) {
            if walker.quarantined {
                continue;
            }
            evaluations += 1;
            step_walker(objective, policy, bounds.as_ref(), walker, src);
        }
        push_best_row(&mut log, iteration, &walkers)?;
    }

    let last = log.last().unwrap();
    Ok(RunResult {
        best_position: last.best_position.clone(),
        best_value: last.best_value,
        evaluations,
        quarantined: walkers.iter().filter(|w| w.quarantined).count(),
        log,
    })
}

fn push_best_row(log: &mut Vec<LogRow>, iteration: usize, walkers: &[Walker]) -> Result<(), Error> {
    let mut best: Option<&Walker> = None;
    for w in walkers {
        if !w.value.is_finite() {
            continue;
        }
        if best.map_or(true, |b| w.value < b.value) {
            best = Some(w);
        }
    }
    match best {
        Some(w) => {
            log.push(LogRow {
                iteration,
                best_value: w.value,
                best_position: w.position.clone(),
            });
            Ok(())
        }
        None => Err(Error::Parameter(
            "every walker initialised on non-finite objective values",
        )),
    }
}
