//! Seeded uniform randomness.
//!
//! The generator identity is pinned: [`UniformSource`] is xoshiro256++ 1.0
//! (Blackman & Vigna), seeded through the SplitMix64 mixer, and unit draws use
//! the top 53 bits of each output word. Identical seeds therefore produce
//! identical sequences on every platform and in every release.
//!
//! Draws lie in the half-open-at-zero unit interval: strictly greater than 0
//! and at most 1. The raw 53-bit mapping lands in `[0, 1)`; a zero word is
//! redrawn rather than remapped, which keeps the remaining values unbiased.
//!
//! A source is single-owner mutable state. Parallel workloads do not share
//! one; they derive one independent stream per worker with [`UniformSource::stream`].

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Salt folded into the master seed before stream derivation, so that
/// `stream(seed, i)` never collides with `new(seed)` itself.
const STREAM_SALT: u64 = 0xD2B7_4407_B1CE_6E93;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Advances a SplitMix64 state and returns the next output.
#[inline]
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    mix64(*state)
}

/// The `index`-th output of the SplitMix64 sequence started at `seed`, in O(1).
#[inline]
fn splitmix64_at(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// A seeded source of uniform draws on `]0, 1]`.
pub trait UnitUniform {
    /// Next uniform draw, strictly greater than 0 and at most 1.
    fn next_unit(&mut self) -> f64;
}

impl<T: UnitUniform + ?Sized> UnitUniform for &mut T {
    #[inline]
    fn next_unit(&mut self) -> f64 {
        (**self).next_unit()
    }
}

/// xoshiro256++ generator with a recorded seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSource {
    seed: u64,
    state: [u64; 4],
}

impl UniformSource {
    /// Creates a source whose 256-bit state is filled from four successive
    /// SplitMix64 outputs of `seed`.
    pub fn new(seed: u64) -> Self {
        let mut s = seed;
        let mut state = [
            splitmix64(&mut s),
            splitmix64(&mut s),
            splitmix64(&mut s),
            splitmix64(&mut s),
        ];
        if state == [0; 4] {
            // xoshiro must not start from the all-zero state.
            state = [GOLDEN_GAMMA; 4];
        }
        Self { seed, state }
    }

    /// Derives the independent stream for worker `index` from a master seed.
    ///
    /// Stream `i` is `new(splitmix64_at(master_seed ^ SALT, i))`; distinct
    /// indices give unrelated 64-bit seeds, so ensembles stay reproducible
    /// regardless of how workers are scheduled.
    pub fn stream(master_seed: u64, index: u64) -> Self {
        Self::new(splitmix64_at(master_seed ^ STREAM_SALT, index))
    }

    /// The seed this source was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next raw 64-bit word (xoshiro256++ step).
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let [s0, s1, s2, s3] = self.state;
        let result = s0.wrapping_add(s3).rotate_left(23).wrapping_add(s0);
        let t = s1 << 17;
        let mut s = [s0, s1, s2, s3];
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        self.state = s;
        result
    }
}

impl UnitUniform for UniformSource {
    #[inline]
    fn next_unit(&mut self) -> f64 {
        loop {
            let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u > 0.0 {
                return u;
            }
        }
    }
}

/// One standard-normal pair via the Box-Muller transform (two unit draws).
pub fn standard_normal_pair<R: UnitUniform>(src: &mut R) -> (f64, f64) {
    use crate::math;
    let u1 = src.next_unit();
    let u2 = src.next_unit();
    let r = math::sqrt(-2.0 * math::ln(u1));
    let phi = 2.0 * core::f64::consts::PI * u2;
    (r * math::cos(phi), r * math::sin(phi))
}
