//! Canned experiments contrasting step policies.
//!
//! Two setups, both with a provable or near-provable light-tailed
//! baseline:
//!
//! * **Escape**: walkers sit at the bottom of the origin well of a
//!   [`DoubleWell`] whose far well lies beyond every uniform step. Under
//!   strict-improvement acceptance a capped policy is trapped at the
//!   origin forever (it would have to accept an uphill move first), so
//!   its escape count is exactly zero, while a heavy-tailed policy jumps
//!   the barrier in one step at a per-proposal rate set by the tail mass.
//! * **Tracking**: a single walker chases the drifting centre of a
//!   [`MovingBowl`]. A policy whose reach is below the drift per
//!   iteration falls behind without bound; occasional long jumps let a
//!   heavy-tailed policy re-catch the centre after it slips away.

use alloc::vec::Vec;

use super::objectives::{DoubleWell, MovingBowl};
use super::{propose_step, Objective, StepPolicy};
use crate::error::Error;
use crate::flight::unit_direction_into;
use crate::math;
use crate::rng::UniformSource;
use crate::sampler::LevyIndex;

/// Geometry, budget, and seed for [`escape_experiment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeConfig {
    /// Cap of the uniform policy under test.
    pub l_max: f64,
    /// Half-width of the far well; the escape distance is 1.25 times
    /// this, keeping the cliff strictly beyond every capped step.
    pub basin_width: f64,
    /// Tail index of the heavy-tailed policy.
    pub index: LevyIndex,
    /// Proposals allowed per repeat. Zero is legal and trivially yields
    /// zero escapes everywhere.
    pub budget: usize,
    pub n_repeats: usize,
    pub seed: u64,
}

/// Escape counts for one policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeRow {
    pub policy: &'static str,
    pub escapes: usize,
    pub repeats: usize,
    pub frequency: f64,
}

/// All policies' escape counts plus the well geometry they faced.
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeSummary {
    pub rows: Vec<EscapeRow>,
    pub escape_distance: f64,
    pub well_halfwidth: f64,
}

/// Repeated single-walker escape runs for levy, uniform, and gaussian
/// policies on a shared well geometry.
///
/// Each (policy, repeat) pair owns the derived stream `p * n_repeats + r`
/// of the master seed, so adding repeats never reshuffles earlier ones.
/// A repeat ends early once its walker reaches a negative value. The
/// gaussian scale is `l_max / 3`, putting the cliff more than eleven
/// standard deviations out: not provably trapped like the uniform cap,
/// but unreachable in any realistic budget.
pub fn escape_experiment(config: &EscapeConfig) -> Result<EscapeSummary, Error> {
    if !(config.l_max > 0.0) || !config.l_max.is_finite() {
        return Err(Error::Domain {
            what: "uniform step cap must be positive and finite",
            value: config.l_max,
        });
    }
    if !config.basin_width.is_finite() || config.basin_width <= 2.0 * config.l_max {
        return Err(Error::Parameter(
            "basin width must exceed twice the uniform step cap",
        ));
    }
    if config.n_repeats == 0 {
        return Err(Error::Parameter("escape experiment needs at least one repeat"));
    }

    let well = DoubleWell::new(1.25 * config.basin_width, config.basin_width, 1.0)?;
    let policies = [
        StepPolicy::levy(config.index),
        StepPolicy::uniform(config.l_max)?,
        StepPolicy::gaussian(config.l_max / 3.0)?,
    ];

    let mut rows = Vec::with_capacity(policies.len());
    for (p, policy) in policies.iter().enumerate() {
        let mut escapes = 0usize;
        for r in 0..config.n_repeats {
            let stream = (p * config.n_repeats + r) as u64;
            let mut src = UniformSource::stream(config.seed, stream);
            let mut x = 0.0f64;
            let mut value = well.evaluate(&[x]);
            let mut direction = [0.0f64];
            for _ in 0..config.budget {
                let l = policy.draw_length(&mut src);
                unit_direction_into(&mut src, &mut direction);
                let candidate = x + l * direction[0];
                let candidate_value = well.evaluate(&[candidate]);
                if candidate_value < value {
                    x = candidate;
                    value = candidate_value;
                }
                if value < 0.0 {
                    escapes += 1;
                    break;
                }
            }
        }
        rows.push(EscapeRow {
            policy: policy.name(),
            escapes,
            repeats: config.n_repeats,
            frequency: escapes as f64 / config.n_repeats as f64,
        });
    }

    Ok(EscapeSummary {
        rows,
        escape_distance: well.escape_distance(),
        well_halfwidth: well.well_halfwidth(),
    })
}

/// Distance-to-centre trace of one walker chasing a drifting bowl.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackingTrace {
    pub drift_rate: f64,
    /// Distance to the centre after each iteration, starting at
    /// iteration 1.
    pub distances: Vec<f64>,
}

impl TrackingTrace {
    pub fn mean_distance(&self) -> f64 {
        self.distances.iter().sum::<f64>() / self.distances.len() as f64
    }

    pub fn final_distance(&self) -> f64 {
        *self.distances.last().unwrap()
    }
}

/// Chases a [`MovingBowl`] for `budget` iterations with one walker.
///
/// Each iteration the centre advances first, then the walker proposes one
/// jump; both the held position and the proposal are scored against the
/// already-moved centre, so standing still gets steadily worse and
/// acceptance does not rely on stale values.
pub fn tracking_experiment(
    drift_rate: f64,
    policy: StepPolicy,
    budget: usize,
    seed: u64,
) -> Result<TrackingTrace, Error> {
    if budget == 0 {
        return Err(Error::Parameter("tracking experiment needs a budget"));
    }
    let bowl = MovingBowl::new(drift_rate)?;
    let mut src = UniformSource::new(seed);
    let mut position = alloc::vec![0.0f64, 0.0];
    let mut distances = Vec::with_capacity(budget);
    for iteration in 1..=budget {
        let proposal = propose_step(&position, policy, None, &mut src);
        let held = bowl.evaluate_at(iteration, &position);
        let jumped = bowl.evaluate_at(iteration, &proposal);
        if jumped < held {
            position = proposal;
        }
        let c = bowl.center(iteration);
        distances.push(math::hypot(position[0] - c[0], position[1] - c[1]));
    }
    Ok(TrackingTrace {
        drift_rate,
        distances,
    })
}
