//! Test objectives with known structure.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{BoxBounds, Objective};
use crate::error::Error;
use crate::math;

/// `f(x) = sum x_i^2`, unbounded, optimum at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticBowl {
    dimension: usize,
}

impl QuadraticBowl {
    pub fn new(dimension: usize) -> Self {
        debug_assert!(dimension >= 1);
        Self { dimension }
    }
}

impl Objective for QuadraticBowl {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter().map(|&c| c * c).sum()
    }

    fn known_optimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((alloc::vec![0.0; self.dimension], 0.0))
    }
}

/// Rastrigin with `A = 10` on `[-5.12, 5.12]^d`: a lattice of local minima
/// around the global one at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rastrigin {
    dimension: usize,
}

impl Rastrigin {
    pub const AMPLITUDE: f64 = 10.0;
    pub const HALF_WIDTH: f64 = 5.12;

    pub fn new(dimension: usize) -> Self {
        debug_assert!(dimension >= 1);
        Self { dimension }
    }
}

impl Objective for Rastrigin {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let mut sum = Self::AMPLITUDE * self.dimension as f64;
        for &c in x {
            sum += c * c - Self::AMPLITUDE * math::cos(2.0 * PI * c);
        }
        sum
    }

    fn bounds(&self) -> Option<BoxBounds> {
        Some(BoxBounds::symmetric(self.dimension, Self::HALF_WIDTH).unwrap())
    }

    fn known_optimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((alloc::vec![0.0; self.dimension], 0.0))
    }
}

/// One-dimensional trap potential: a quadratic well at the origin, then
/// past `escape_distance` a parabolic well of the given `depth` spanning
/// two half-widths, then quadratic growth again.
///
/// ```text
/// x <= a           x^2
/// a < x < a + 2w   depth * (((x - a - w) / w)^2 - 1)
/// x >= a + 2w      (x - a - 2w)^2
/// ```
///
/// The value is negative exactly on the open interval `(a, a + 2w)`, so
/// "reached a negative value" means "escaped the origin well". The cliff
/// at `a` is deliberate: under strict-improvement acceptance the only way
/// in is a single jump across, never a climb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleWell {
    escape_distance: f64,
    well_halfwidth: f64,
    depth: f64,
}

impl DoubleWell {
    pub fn new(escape_distance: f64, well_halfwidth: f64, depth: f64) -> Result<Self, Error> {
        for (what, v) in [
            ("escape distance must be positive and finite", escape_distance),
            ("well half-width must be positive and finite", well_halfwidth),
            ("well depth must be positive and finite", depth),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(Self {
            escape_distance,
            well_halfwidth,
            depth,
        })
    }

    pub fn escape_distance(&self) -> f64 {
        self.escape_distance
    }

    pub fn well_halfwidth(&self) -> f64 {
        self.well_halfwidth
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// Right edge of the far well, `a + 2w`.
    pub fn far_edge(&self) -> f64 {
        self.escape_distance + 2.0 * self.well_halfwidth
    }
}

impl Objective for DoubleWell {
    fn dimension(&self) -> usize {
        1
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let x = x[0];
        let a = self.escape_distance;
        let w = self.well_halfwidth;
        if x <= a {
            x * x
        } else if x < a + 2.0 * w {
            let t = (x - a - w) / w;
            self.depth * (t * t - 1.0)
        } else {
            let t = x - (a + 2.0 * w);
            t * t
        }
    }

    fn known_optimum(&self) -> Option<(Vec<f64>, f64)> {
        Some((
            alloc::vec![self.escape_distance + self.well_halfwidth],
            -self.depth,
        ))
    }
}

/// Two-dimensional quadratic bowl whose centre drifts along the x-axis at
/// a fixed rate per iteration.
///
/// Time-dependent, so it does not implement [`Objective`]; callers
/// evaluate it through [`evaluate_at`](Self::evaluate_at).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovingBowl {
    drift_rate: f64,
}

impl MovingBowl {
    pub fn new(drift_rate: f64) -> Result<Self, Error> {
        if !(drift_rate >= 0.0) || !drift_rate.is_finite() {
            return Err(Error::Domain {
                what: "drift rate must be nonnegative and finite",
                value: drift_rate,
            });
        }
        Ok(Self { drift_rate })
    }

    pub fn drift_rate(&self) -> f64 {
        self.drift_rate
    }

    pub fn center(&self, iteration: usize) -> [f64; 2] {
        [self.drift_rate * iteration as f64, 0.0]
    }

    pub fn evaluate_at(&self, iteration: usize, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), 2);
        let c = self.center(iteration);
        let dx = x[0] - c[0];
        let dy = x[1] - c[1];
        dx * dx + dy * dy
    }
}
