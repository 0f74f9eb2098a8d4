//! Power-law step lengths by inverse-transform sampling.
//!
//! Step lengths follow the density `p(l) = beta * (1 + l)^(-1 - beta)` on
//! `l >= 0`. Shifting by one keeps the density normalizable down to `l = 0`
//! while leaving the `l^(-1 - beta)` tail intact, and it makes every
//! distribution function a one-liner:
//!
//! ```text
//! cdf(l)         = 1 - (1 + l)^(-beta)
//! inverse_cdf(u) = u^(-1/beta) - 1
//! ```
//!
//! Sampling is one uniform draw, one `pow`, one subtraction. Draws come
//! through the [`UnitUniform`] trait, so tests can substitute degenerate
//! sources for the seeded generator.

use crate::error::Error;
use crate::math;
use crate::rng::UnitUniform;

/// Validated tail index `beta > 0`.
///
/// There is no upper cap: indices at and above 2 are legitimate for step
/// sampling and diffusion classification. Components restricted to smaller
/// ranges (the stable density needs `beta <= 2`) check at their own boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyIndex {
    beta: f64,
}

impl LevyIndex {
    pub fn new(beta: f64) -> Result<Self, Error> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::Domain {
                what: "tail index must be a finite positive real",
                value: beta,
            });
        }
        Ok(Self { beta })
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.beta
    }
}

impl core::fmt::Display for LevyIndex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.beta)
    }
}

/// The shifted power-law step distribution for one tail index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDistribution {
    index: LevyIndex,
}

impl StepDistribution {
    pub fn new(index: LevyIndex) -> Self {
        Self { index }
    }

    #[inline]
    pub fn index(&self) -> LevyIndex {
        self.index
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.index.get()
    }

    /// Normalization constant of the density; equals the tail index exactly.
    #[inline]
    pub fn normalization(&self) -> f64 {
        self.beta()
    }

    /// Density at step length `l >= 0`.
    pub fn pdf(&self, l: f64) -> Result<f64, Error> {
        if !(l >= 0.0) {
            return Err(Error::Domain {
                what: "step length must be nonnegative",
                value: l,
            });
        }
        let beta = self.beta();
        Ok(beta * math::pow(1.0 + l, -1.0 - beta))
    }

    /// Distribution function at step length `l >= 0`.
    pub fn cdf(&self, l: f64) -> Result<f64, Error> {
        if !(l >= 0.0) {
            return Err(Error::Domain {
                what: "step length must be nonnegative",
                value: l,
            });
        }
        Ok(1.0 - math::pow(1.0 + l, -self.beta()))
    }

    /// Quantile function on `0 < u <= 1`.
    ///
    /// `u` here is the upper-tail coordinate of the unit draw: `u = 1` maps to
    /// step 0 and `u -> 0` to arbitrarily long steps, matching what
    /// [`sample_step`](Self::sample_step) feeds in. The median of the
    /// symmetric-in-`u` law is at `u = 0.5`.
    pub fn inverse_cdf(&self, u: f64) -> Result<f64, Error> {
        if !(u > 0.0 && u <= 1.0) {
            return Err(Error::Domain {
                what: "quantile argument must lie in ]0, 1]",
                value: u,
            });
        }
        Ok(self.inverse_unchecked(u))
    }

    #[inline]
    fn inverse_unchecked(&self, u: f64) -> f64 {
        math::pow(u, -1.0 / self.beta()) - 1.0
    }

    /// Draws one step length, consuming exactly one unit draw.
    ///
    /// Small indices produce violent tails: below `beta` of roughly 0.05 a
    /// single draw can overflow to infinity. That is the honest image of the
    /// law rather than a bug, and callers who cannot tolerate it should cap
    /// lengths themselves.
    #[inline]
    pub fn sample_step<R: UnitUniform>(&self, src: &mut R) -> f64 {
        self.inverse_unchecked(src.next_unit())
    }
}
