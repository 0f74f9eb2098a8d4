//! Trajectory simulation.
//!
//! A walker starts at the origin, draws a step length from the power-law
//! sampler, picks an isotropic direction, and repeats. Two time accountings
//! give the two classical pictures of the same geometry:
//!
//! * flight: every jump costs one unit of time regardless of length;
//! * walk: a jump of length `l` at speed `v` costs `l / v`, so long
//!   excursions are traversed rather than teleported.
//!
//! Per step the generator is consumed in a fixed order (length first, then
//! direction), which pins trajectories byte for byte to their seed.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::rng::{standard_normal_pair, UniformSource, UnitUniform};
use crate::sampler::{LevyIndex, StepDistribution};

/// How elapsed time is charged per jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeAccounting {
    /// One unit of time per jump.
    Flight,
    /// Constant-speed traversal: a jump of length `l` takes `l / speed`.
    Walk { speed: f64 },
}

impl TimeAccounting {
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            TimeAccounting::Flight => Ok(()),
            TimeAccounting::Walk { speed } => {
                if !speed.is_finite() || speed <= 0.0 {
                    Err(Error::Domain {
                        what: "walk speed must be a finite positive real",
                        value: speed,
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Time charged for a jump of length `l`.
    #[inline]
    pub fn segment_time(&self, l: f64) -> f64 {
        match *self {
            TimeAccounting::Flight => 1.0,
            TimeAccounting::Walk { speed } => l / speed,
        }
    }
}

/// A simulated path: visited points plus per-segment lengths and times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dimension: usize,
    seed: u64,
    /// Row-major `(num_points, dimension)`.
    coords: Vec<f64>,
    segment_lengths: Vec<f64>,
    segment_times: Vec<f64>,
}

impl Trajectory {
    /// Relative tolerance for the stored-length versus recomputed-distance
    /// consistency check.
    pub const LENGTH_TOLERANCE: f64 = 1e-12;

    /// Builds a trajectory from raw parts, enforcing the structural
    /// invariants: origin start, matching array lengths, positive segment
    /// lengths and times, and stored lengths within
    /// [`LENGTH_TOLERANCE`](Self::LENGTH_TOLERANCE) of the recomputed
    /// point-to-point distances, scaled by the larger of the segment length
    /// and the endpoint coordinate magnitudes.
    pub fn from_parts(
        dimension: usize,
        seed: u64,
        coords: Vec<f64>,
        segment_lengths: Vec<f64>,
        segment_times: Vec<f64>,
    ) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::Parameter("dimension must be at least 1"));
        }
        if coords.len() % dimension != 0 {
            return Err(Error::Parameter("coordinate array does not tile the dimension"));
        }
        let n_points = coords.len() / dimension;
        if n_points == 0 {
            return Err(Error::Parameter("trajectory needs at least the origin point"));
        }
        if segment_lengths.len() != n_points - 1 || segment_times.len() != n_points - 1 {
            return Err(Error::Parameter("segment arrays must have one entry fewer than points"));
        }
        if coords[..dimension].iter().any(|&c| c != 0.0) {
            return Err(Error::Parameter("trajectory must start at the origin"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("coordinates must be finite"));
        }
        for (i, (&l, &t)) in segment_lengths.iter().zip(&segment_times).enumerate() {
            if !l.is_finite() || l <= 0.0 || !t.is_finite() || t <= 0.0 {
                return Err(Error::Parameter("segment lengths and times must be positive"));
            }
            let from = &coords[i * dimension..(i + 1) * dimension];
            let to = &coords[(i + 1) * dimension..(i + 2) * dimension];
            let dist = euclidean(from, to);
            // A short segment far from the origin is stored with absolute
            // error set by the coordinate magnitude, so the tolerance scales
            // with both.
            let mut scale = l.max(1.0);
            for &c in from.iter().chain(to) {
                scale = scale.max(math::abs(c));
            }
            if math::abs(dist - l) > Self::LENGTH_TOLERANCE * scale {
                return Err(Error::Parameter(
                    "stored segment length disagrees with point distance",
                ));
            }
        }
        Ok(Self {
            dimension,
            seed,
            coords,
            segment_lengths,
            segment_times,
        })
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn num_points(&self) -> usize {
        self.coords.len() / self.dimension
    }

    #[inline]
    pub fn num_steps(&self) -> usize {
        self.segment_lengths.len()
    }

    /// Coordinates of point `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dimension)
    }

    pub fn segment_lengths(&self) -> &[f64] {
        &self.segment_lengths
    }

    pub fn segment_times(&self) -> &[f64] {
        &self.segment_times
    }

    /// Cumulative elapsed time at each point; starts at zero.
    pub fn elapsed_times(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.num_points());
        let mut t = 0.0;
        out.push(t);
        for &dt in &self.segment_times {
            t += dt;
            out.push(t);
        }
        out
    }

    pub fn total_time(&self) -> f64 {
        self.segment_times.iter().sum()
    }

    /// Per-coordinate minima and maxima over all visited points.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dimension;
        let mut lo = self.coords[..d].to_vec();
        let mut hi = self.coords[..d].to_vec();
        for point in self.points() {
            for (j, &c) in point.iter().enumerate() {
                if c < lo[j] {
                    lo[j] = c;
                }
                if c > hi[j] {
                    hi[j] = c;
                }
            }
        }
        (lo, hi)
    }

    /// Euclidean diagonal of the bounding box.
    pub fn bounding_box_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        let mut acc = 0.0;
        for (l, h) in lo.iter().zip(&hi) {
            let e = h - l;
            acc += e * e;
        }
        math::sqrt(acc)
    }

    /// Squared distance of point `i` from the origin.
    pub fn squared_displacement(&self, i: usize) -> f64 {
        self.point(i).iter().map(|&c| c * c).sum()
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let e = x - y;
        acc += e * e;
    }
    math::sqrt(acc)
}

/// Fills `out` with an isotropic unit vector, consuming a draw count that
/// depends only on the dimension: one draw in 1-D (sign) and 2-D (angle),
/// and `dim` rounded up to even in higher dimensions (normalized Gaussian
/// pairs, redrawn in the vanishing-norm corner case).
pub fn unit_direction_into<R: UnitUniform>(src: &mut R, out: &mut [f64]) {
    match out.len() {
        0 => {}
        1 => {
            out[0] = if src.next_unit() <= 0.5 { -1.0 } else { 1.0 };
        }
        2 => {
            let angle = 2.0 * core::f64::consts::PI * src.next_unit();
            out[0] = math::cos(angle);
            out[1] = math::sin(angle);
        }
        dim => loop {
            let mut norm_sq = 0.0;
            let mut i = 0;
            while i < dim {
                let (z0, z1) = standard_normal_pair(src);
                out[i] = z0;
                norm_sq += z0 * z0;
                if i + 1 < dim {
                    out[i + 1] = z1;
                    norm_sq += z1 * z1;
                }
                i += 2;
            }
            if norm_sq > 1e-300 {
                let inv = 1.0 / math::sqrt(norm_sq);
                for c in out.iter_mut() {
                    *c *= inv;
                }
                return;
            }
        },
    }
}

/// Convenience wrapper over [`unit_direction_into`].
pub fn unit_direction<R: UnitUniform>(dimension: usize, src: &mut R) -> Vec<f64> {
    let mut out = alloc::vec![0.0; dimension];
    unit_direction_into(src, &mut out);
    out
}

/// Simulates `n_steps` jumps from the origin.
pub fn simulate_trajectory(
    index: LevyIndex,
    n_steps: usize,
    dimension: usize,
    accounting: TimeAccounting,
    seed: u64,
) -> Result<Trajectory, Error> {
    if n_steps == 0 {
        return Err(Error::Parameter("trajectory needs at least one step"));
    }
    if dimension == 0 {
        return Err(Error::Parameter("dimension must be at least 1"));
    }
    accounting.validate()?;

    let dist = StepDistribution::new(index);
    let mut src = UniformSource::new(seed);
    let mut coords = Vec::with_capacity((n_steps + 1) * dimension);
    let mut segment_lengths = Vec::with_capacity(n_steps);
    let mut segment_times = Vec::with_capacity(n_steps);
    let mut position = alloc::vec![0.0; dimension];
    let mut direction = alloc::vec![0.0; dimension];
    coords.extend_from_slice(&position);

    for _ in 0..n_steps {
        let l = dist.sample_step(&mut src);
        unit_direction_into(&mut src, &mut direction);
        for (p, u) in position.iter_mut().zip(&direction) {
            *p += l * u;
        }
        coords.extend_from_slice(&position);
        segment_lengths.push(l);
        segment_times.push(accounting.segment_time(l));
    }

    Trajectory::from_parts(dimension, seed, coords, segment_lengths, segment_times)
}
