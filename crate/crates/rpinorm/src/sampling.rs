//! Seeded random inputs for self-checks and demos.
//!
//! Everything produced here lives on the 1/16 grid with steps of at
//! least 1/8 and values within `[-10, 10]`, so norm computations on
//! these inputs incur no rounding at all: invariants that hold exactly
//! in exact arithmetic can be checked with `==` rather than with
//! tolerances. Sampling is deterministic per seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::norms::WeightSequence;
use crate::profiles::{CriticalProfile, PiecewiseLinearFunction, Reparametrization};

/// Deterministic generator of grid-aligned profiles, functions, weight
/// sequences, and reparametrizations.
pub struct CorpusSampler {
    rng: ChaCha8Rng,
}

impl CorpusSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn sixteenths(&mut self, lo: i64, hi: i64) -> f64 {
        self.rng.gen_range(lo..=hi) as f64 / 16.0
    }

    /// A nonzero compact profile with at most `max_interior` critical
    /// values, all on the 1/16 grid with steps of at least 1/8.
    pub fn profile(&mut self, max_interior: usize) -> CriticalProfile {
        let cap = max_interior.max(1);
        for _ in 0..64 {
            let l = self.rng.gen_range(1..=cap);
            let mut values = vec![0.0f64];
            let mut level = 0.0f64;
            let mut dir = if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            for _ in 0..l {
                level += dir * self.sixteenths(2, 32);
                values.push(level);
                dir = -dir;
            }
            values.push(0.0);
            let Ok(p) = CriticalProfile::reduce(values) else { continue };
            if p.is_zero() || !p.is_compact() {
                continue;
            }
            if p.values().len() - 2 > cap {
                continue;
            }
            if crate::profiles::separation_margin(&p) < 0.125 - 1e-12 {
                continue;
            }
            if p.sup() > 10.0 {
                continue;
            }
            return p;
        }
        CriticalProfile::new(vec![0.0, 1.0, 0.0]).unwrap()
    }

    /// A piecewise linear realization of a sampled profile: grid-aligned
    /// breakpoint times with random spacing, plus occasional collinear
    /// midpoints that canonicalization must strip.
    pub fn function(&mut self, max_interior: usize) -> PiecewiseLinearFunction {
        let profile = self.profile(max_interior);
        self.realize(&profile)
    }

    /// A realization of a specific profile (random times, exact values).
    pub fn realize(&mut self, profile: &CriticalProfile) -> PiecewiseLinearFunction {
        let mut t = self.sixteenths(-32, 32);
        let mut points: Vec<(f64, f64)> = Vec::new();
        for &v in profile.values() {
            points.push((t, v));
            t += self.sixteenths(8, 32);
        }
        // Insert collinear midpoints (exact on the grid after halving
        // twice: times and values stay dyadic).
        let mut with_noise = Vec::with_capacity(points.len() * 2);
        for w in points.windows(2) {
            with_noise.push(w[0]);
            if self.rng.gen_bool(0.3) {
                with_noise.push(((w[0].0 + w[1].0) / 2.0, (w[0].1 + w[1].1) / 2.0));
            }
        }
        with_noise.push(*points.last().unwrap());
        PiecewiseLinearFunction::new(with_noise).unwrap()
    }

    /// A grid-aligned weight sequence with entries of magnitude in
    /// `[1/4, 4]`.
    pub fn weights(&mut self, max_len: usize) -> WeightSequence {
        let k = self.rng.gen_range(1..=max_len.max(1));
        let ws = (0..k)
            .map(|_| {
                let sign = if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                sign * self.sixteenths(4, 64)
            })
            .collect();
        WeightSequence::new(ws).unwrap()
    }

    /// A strictly increasing piecewise linear reparametrization with a
    /// few random control points.
    pub fn reparam(&mut self) -> Reparametrization {
        let k = self.rng.gen_range(1..=4usize);
        let mut x = self.sixteenths(-32, 32);
        let mut y = self.sixteenths(-32, 32);
        let mut points = Vec::with_capacity(k);
        for _ in 0..k {
            points.push((x, y));
            x += self.sixteenths(4, 32);
            y += self.sixteenths(4, 32);
        }
        Reparametrization::new(points).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{canonicalize, separation_margin};

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let mut a = CorpusSampler::new(7);
        let mut b = CorpusSampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.profile(6).values(), b.profile(6).values());
            assert_eq!(a.weights(4).weights(), b.weights(4).weights());
        }
        let mut c = CorpusSampler::new(8);
        let differs = (0..10).any(|_| {
            CorpusSampler::new(7).profile(6).values() != c.profile(6).values()
        });
        assert!(differs);
    }

    #[test]
    fn sampled_profiles_sit_on_the_grid_with_margin() {
        let mut s = CorpusSampler::new(42);
        for _ in 0..200 {
            let p = s.profile(8);
            assert!(p.is_compact());
            assert!(!p.is_zero());
            assert!(separation_margin(&p) >= 0.125 - 1e-12);
            for &v in p.values() {
                assert_eq!(v * 16.0, (v * 16.0).round());
                assert!(v.abs() <= 10.0);
            }
        }
    }

    #[test]
    fn realizations_canonicalize_back_exactly() {
        let mut s = CorpusSampler::new(3);
        for _ in 0..100 {
            let p = s.profile(6);
            let f = s.realize(&p);
            assert_eq!(canonicalize(&f).values(), p.values());
        }
    }

    #[test]
    fn reparams_are_strictly_increasing() {
        let mut s = CorpusSampler::new(11);
        for _ in 0..50 {
            let h = s.reparam();
            let pts = h.points();
            assert!(pts.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1));
        }
    }
}
