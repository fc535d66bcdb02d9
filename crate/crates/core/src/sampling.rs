//! Deterministic sample sets.
//!
//! Every check in the crate draws its points from here so that reports are
//! reproducible bit for bit. The generators are low-discrepancy sequences
//! rather than pseudo-random streams: no seed to carry around.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// `i`-th element (1-based is customary, any index works) of the van der
/// Corput sequence in `base`.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut acc = 0.0;
    while i > 0 {
        acc += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    acc
}

/// First `n` points of the 2-D Halton sequence (bases 2 and 3), skipping
/// the origin.
pub fn halton2(n: usize) -> Vec<(f64, f64)> {
    (1..=n as u64)
        .map(|i| (radical_inverse(i, 2), radical_inverse(i, 3)))
        .collect()
}

/// `n` points in the annulus `r_min <= |z| <= r_max`, spread evenly in
/// `log |z|` and in angle.
pub fn annulus_points(n: usize, r_min: f64, r_max: f64) -> Vec<C64> {
    let (a, b) = (r_min.ln(), r_max.ln());
    halton2(n)
        .into_iter()
        .map(|(s, t)| C64::from_polar((a + (b - a) * s).exp(), 2.0 * PI * t))
        .collect()
}

/// `n` equally spaced points on `|z| = r`, starting half a step past
/// `offset` so that no sample sits on a slit through angle `offset`.
pub fn circle_points(n: usize, r: f64, offset: f64) -> Vec<C64> {
    let step = 2.0 * PI / n as f64;
    (0..n)
        .map(|k| C64::from_polar(r, offset + (k as f64 + 0.5) * step))
        .collect()
}

/// Keep only points at least `clearance` away from every point of `avoid`.
pub fn with_clearance(points: Vec<C64>, avoid: &[C64], clearance: f64) -> Vec<C64> {
    points
        .into_iter()
        .filter(|z| avoid.iter().all(|p| (z - p).norm() >= clearance))
        .collect()
}
