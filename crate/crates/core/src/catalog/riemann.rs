//! Conformal map of an ellipse onto the unit disk.
//!
//! The inverse map `G: D -> E` is written `G(w) = w exp(h(w))`. On the unit
//! circle `|G(e^{iφ})| = ρ(θ(φ))`, where `ρ` is the polar equation of the
//! ellipse and `θ(φ)` the boundary correspondence. Theodorsen's iteration
//! `θ ← φ + K[log ρ(θ)]` (with `K` the periodic conjugate function) finds
//! the correspondence; the Fourier coefficients of `log ρ(θ(φ))` are then
//! the Taylor coefficients of `h`. The forward map is obtained by Newton's
//! method on `G`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

pub const THEODORSEN_POINTS: usize = 256;
const MAX_SWEEPS: usize = 500;
const SWEEP_TOL: f64 = 1e-15;

/// Riemann map of `{ (x/a)² + (y/b)² < 1 }` onto the unit disk with
/// `F(0) = 0`, `F'(0) > 0`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EllipseMap {
    pub a: f64,
    pub b: f64,
    /// Boundary points used by the iteration.
    pub points: usize,
    /// Iterations until the correspondence stopped moving.
    pub sweeps: usize,
    /// Taylor coefficients of `h`, constant term first.
    pub coeffs: Vec<C64>,
    /// Largest `||F(ζ)| - 1|` over boundary test points off the grid.
    pub boundary_error: f64,
}

fn polar_radius(a: f64, b: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    a * b / ((b * c).powi(2) + (a * s).powi(2)).sqrt()
}

fn dft(x: &[f64]) -> Vec<C64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, &v) in x.iter().enumerate() {
                let ang = -TAU * ((k * j) % n) as f64 / n as f64;
                acc += C64::from_polar(v, ang);
            }
            acc / n as f64
        })
        .collect()
}

/// Periodic conjugate function of samples on an equispaced grid.
fn conjugate(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let hat = dft(x);
    (0..n)
        .map(|j| {
            let mut acc = 0.0;
            for (k, c) in hat.iter().enumerate().take(n / 2).skip(1) {
                // -i sgn(k) c_k e^{ikφ} + conjugate term = 2 Im(c_k e^{ikφ})
                let e = C64::from_polar(1.0, TAU * ((k * j) % n) as f64 / n as f64);
                acc += 2.0 * (c * e).im;
            }
            acc
        })
        .collect()
}

impl EllipseMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::ParamRange {
                name: "semi-axis",
                value: a.min(b),
                range: "(0, inf)",
            });
        }
        let n = THEODORSEN_POINTS;
        let phi: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        let mut theta = phi.clone();
        let mut sweeps = 0;
        let mut previous = f64::INFINITY;
        loop {
            let log_rho: Vec<f64> = theta.iter().map(|&t| polar_radius(a, b, t).ln()).collect();
            let k = conjugate(&log_rho);
            let next: Vec<f64> = phi.iter().zip(&k).map(|(p, k)| p + k).collect();
            let change = next
                .iter()
                .zip(&theta)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            theta = next;
            sweeps += 1;
            // the correspondence converges linearly until roundoff takes over
            if change <= SWEEP_TOL || (change < 1e-12 && change >= previous) {
                break;
            }
            previous = change;
            if sweeps >= MAX_SWEEPS {
                return Err(Error::Convergence(alloc::format!(
                    "Theodorsen iteration stalled at change {change:e}"
                )));
            }
        }
        let log_rho: Vec<f64> = theta.iter().map(|&t| polar_radius(a, b, t).ln()).collect();
        let hat = dft(&log_rho);
        let mut coeffs = vec![C64::new(hat[0].re, 0.0)];
        coeffs.extend(hat.iter().take(n / 2).skip(1).map(|c| 2.0 * c));
        let mut map = EllipseMap {
            a,
            b,
            points: n,
            sweeps,
            coeffs,
            boundary_error: 0.0,
        };
        let mut worst: f64 = 0.0;
        for j in 0..97 {
            let t = TAU * (j as f64 + 0.37) / 97.0;
            let zeta = C64::new(a * t.cos(), b * t.sin());
            worst = worst.max((map.forward(zeta)?.norm() - 1.0).abs());
        }
        map.boundary_error = worst;
        Ok(map)
    }

    fn h_and_derivative(&self, w: C64) -> (C64, C64) {
        let mut v = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            v = v * w + c;
        }
        let mut d = C64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            d = d * w + c * k as f64;
        }
        (v, d)
    }

    /// `G(w)` and `G'(w)`.
    pub fn inverse(&self, w: C64) -> (C64, C64) {
        let (h, dh) = self.h_and_derivative(w);
        let e = h.exp();
        (w * e, e * (1.0 + w * dh))
    }

    /// `F(ζ)`, the point of the disk mapped to `ζ` by `G`.
    pub fn forward(&self, zeta: C64) -> Result<C64> {
        let e0 = (-self.coeffs[0]).exp();
        let mut w = C64::new(0.0, 0.0);
        // continuation along the ray from 0 keeps Newton in its basin
        for step in 1..=4 {
            let target = zeta * (step as f64 / 4.0);
            if step == 1 {
                w = target * e0;
            }
            let mut converged = false;
            for _ in 0..60 {
                let (g, dg) = self.inverse(w);
                let dw = (g - target) / dg;
                w -= dw;
                if dw.norm() <= 1e-16 * w.norm().max(1e-300) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                let (g, _) = self.inverse(w);
                if (g - target).norm() > 1e-13 * target.norm().max(1.0) {
                    return Err(Error::Convergence(alloc::format!(
                        "ellipse map inversion failed at {zeta}"
                    )));
                }
            }
        }
        Ok(w)
    }

    /// `F'(ζ) = 1 / G'(F(ζ))`
    pub fn forward_derivative(&self, zeta: C64) -> Result<C64> {
        let w = self.forward(zeta)?;
        Ok(1.0 / self.inverse(w).1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_a_scaling() {
        let m = EllipseMap::new(2.0, 2.0).unwrap();
        let w = m.forward(C64::new(1.0, 0.5)).unwrap();
        assert!((w - C64::new(0.5, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn cerezo_ellipse_boundary_lands_on_circle() {
        let m = EllipseMap::new(1f64.cosh(), 1f64.sinh()).unwrap();
        assert!(m.boundary_error < 1e-12, "{}", m.boundary_error);
        assert!(m.forward(C64::new(0.0, 0.0)).unwrap().norm() < 1e-300);
        // symmetric ellipse: the map commutes with conjugation
        let z = C64::new(0.4, 0.3);
        assert!((m.forward(z).unwrap().conj() - m.forward(z.conj()).unwrap()).norm() < 1e-14);
    }
}
