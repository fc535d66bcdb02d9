//! Dirichlet-to-Neumann spectra of flat cylinders `[-L, L] × S¹` and of
//! their Möbius quotients by `(s, θ) ↦ (-s, θ + π)`.
//!
//! Harmonic functions separate as `(A cosh ks + B sinh ks) e^{±ikθ}` for
//! `k ≥ 1` and `A + Bs` for `k = 0`, so each Fourier mode reduces the
//! Dirichlet-to-Neumann map to a symmetric 2×2 matrix acting on the values
//! at the two boundary circles.
//!
//! Boundary weights `(ρ1, ρ2)` scale the boundary measure of the circles
//! `s = -L` and `s = L`. The Steklov condition `∂_ν u = σ ρ u` then gives
//! the generalized problem `D x = σ P x` with `P = diag(ρ1, ρ2)`, solved in
//! the symmetric form `P^{-1/2} D P^{-1/2}`. The boundary length is
//! `2π (ρ1 + ρ2)`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CylinderGeometry {
    pub half_length: f64,
    pub weights: (f64, f64),
}

impl CylinderGeometry {
    pub fn new(half_length: f64, weights: (f64, f64)) -> Result<Self> {
        if !(half_length > 0.0 && half_length.is_finite()) {
            return Err(Error::ParamRange {
                name: "L",
                value: half_length,
                range: "(0, inf)",
            });
        }
        for w in [weights.0, weights.1] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::ParamRange {
                    name: "weight",
                    value: w,
                    range: "(0, inf)",
                });
            }
        }
        Ok(CylinderGeometry { half_length, weights })
    }

    /// Cylinder conformal to `A_{1/R,R}`: `L = log R`, unit weights.
    pub fn from_annulus(r: f64) -> Result<Self> {
        Self::new(r.ln(), (1.0, 1.0))
    }

    pub fn boundary_length(&self) -> f64 {
        TAU * (self.weights.0 + self.weights.1)
    }
}

/// Symmetric 2×2 matrix `[[a, b], [b, d]]` as `[a, b, d]`.
pub type Sym2 = [f64; 3];

/// Dirichlet-to-Neumann matrix of mode `k` on the boundary values
/// `(u(-L), u(L))`, with the weights applied.
pub fn dtn_mode_matrix(geom: &CylinderGeometry, k: u32) -> Sym2 {
    let l = geom.half_length;
    let (diag, off) = if k == 0 {
        (0.5 / l, -0.5 / l)
    } else {
        let kf = k as f64;
        let t = (kf * l).tanh();
        let c = 1.0 / t;
        (0.5 * kf * (t + c), 0.5 * kf * (t - c))
    };
    let (p1, p2) = (geom.weights.0.sqrt(), geom.weights.1.sqrt());
    [diag / (p1 * p1), off / (p1 * p2), diag / (p2 * p2)]
}

/// Eigenvalues in ascending order with unit eigenvectors.
pub fn sym_eig2(m: Sym2) -> [(f64, [f64; 2]); 2] {
    let [a, b, d] = m;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = half.hypot(b);
    let (lo, hi) = (mean - r, mean + r);
    if b == 0.0 {
        return if a <= d {
            [(a, [1.0, 0.0]), (d, [0.0, 1.0])]
        } else {
            [(d, [0.0, 1.0]), (a, [1.0, 0.0])]
        };
    }
    // Rotation angle of the eigenbasis, stable for any sign of `half`.
    let theta = 0.5 * b.atan2(half);
    let (s, c) = theta.sin_cos();
    // (c, s) belongs to the larger eigenvalue.
    [(lo, [-s, c]), (hi, [c, s])]
}

/// Behaviour of an eigenfunction under `s ↦ -s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectrumEntry {
    pub sigma: f64,
    pub mode: u32,
    /// Exact for equal weights. Otherwise the lower eigenvalue of a mode is
    /// labelled even (boundary values of equal sign) and the upper odd.
    pub parity: Parity,
    /// 1 for `k = 0`, 2 for `k ≥ 1` (the cosine and sine copies).
    pub multiplicity: u32,
    /// Eigenvector in the weighted coordinates `P^{1/2} (u(-L), u(L))`.
    pub boundary_vector: [f64; 2],
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SteklovSpectrum {
    pub entries: Vec<SpectrumEntry>,
    /// `None` for the disk.
    pub geometry: Option<CylinderGeometry>,
    pub boundary_length: f64,
}

fn order(a: &SpectrumEntry, b: &SpectrumEntry) -> Ordering {
    a.sigma
        .total_cmp(&b.sigma)
        .then(a.mode.cmp(&b.mode))
        .then(a.parity.cmp(&b.parity))
}

fn mode_entries(geom: &CylinderGeometry, k: u32) -> [SpectrumEntry; 2] {
    let multiplicity = if k == 0 { 1 } else { 2 };
    let [(lo, vlo), (hi, vhi)] = sym_eig2(dtn_mode_matrix(geom, k));
    let entry = |sigma: f64, v: [f64; 2], parity| SpectrumEntry {
        // The k = 0 constant has σ = 0 exactly; roundoff could make it -0 or tiny.
        sigma: if k == 0 && parity == Parity::Even { 0.0 } else { sigma },
        mode: k,
        parity,
        multiplicity,
        boundary_vector: v,
    };
    [entry(lo, vlo, Parity::Even), entry(hi, vhi, Parity::Odd)]
}

fn expanded_len(entries: &[SpectrumEntry]) -> usize {
    entries.iter().map(|e| e.multiplicity as usize).sum()
}

/// Sorted spectrum of all modes `k ≤ max_mode`, cut after the entry that
/// reaches `count` eigenvalues counted with multiplicity.
///
/// Fails with a truncation error when an omitted mode could still
/// contribute below the cut: every eigenvalue of mode `k` is at least
/// `k tanh(kL) / max ρ`, which increases with `k`.
pub fn steklov_spectrum(geom: &CylinderGeometry, max_mode: u32, count: usize) -> Result<SteklovSpectrum> {
    let mut all: Vec<SpectrumEntry> = (0..=max_mode).flat_map(|k| mode_entries(geom, k)).collect();
    all.sort_by(order);
    let cut = truncate(&mut all, count);
    let next = (max_mode + 1) as f64;
    let bound = next * (next * geom.half_length).tanh() / geom.weights.0.max(geom.weights.1);
    if cut.map_or(true, |last| last >= bound) {
        return Err(Error::Truncation { max_mode, count });
    }
    Ok(SteklovSpectrum {
        entries: all,
        geometry: Some(*geom),
        boundary_length: geom.boundary_length(),
    })
}

// Keep the shortest prefix covering `count` eigenvalues; returns the last
// kept eigenvalue, or None if there are too few.
fn truncate(all: &mut Vec<SpectrumEntry>, count: usize) -> Option<f64> {
    let mut seen = 0;
    for i in 0..all.len() {
        seen += all[i].multiplicity as usize;
        if seen >= count {
            all.truncate(i + 1);
            return Some(all[i].sigma);
        }
    }
    None
}

/// Unit disk: `σ = k` for `r^k e^{±ikθ}`, boundary length `2π`.
pub fn disk_spectrum(max_mode: u32, count: usize) -> Result<SteklovSpectrum> {
    let mut all: Vec<SpectrumEntry> = (0..=max_mode)
        .map(|k| SpectrumEntry {
            sigma: k as f64,
            mode: k,
            parity: Parity::Even,
            multiplicity: if k == 0 { 1 } else { 2 },
            boundary_vector: [1.0, 0.0],
        })
        .collect();
    match truncate(&mut all, count) {
        Some(last) if last < (max_mode + 1) as f64 => Ok(SteklovSpectrum {
            entries: all,
            geometry: None,
            boundary_length: TAU,
        }),
        _ => Err(Error::Truncation { max_mode, count }),
    }
}

/// Whether an entry descends to the Möbius quotient: even `k` with even
/// parity, odd `k` with odd parity.
pub fn is_deck_invariant(e: &SpectrumEntry) -> bool {
    (e.mode % 2 == 0) == (e.parity == Parity::Even)
}

/// Spectrum of the Möbius band covered by the cylinder: the deck-invariant
/// eigenfunctions, cut at `count` eigenvalues counted with multiplicity.
pub fn moebius_spectrum(geom: &CylinderGeometry, max_mode: u32, count: usize) -> Result<SteklovSpectrum> {
    if geom.weights.0 != geom.weights.1 {
        return Err(Error::WeightMismatch(geom.weights.0, geom.weights.1));
    }
    let mut all: Vec<SpectrumEntry> = (0..=max_mode)
        .flat_map(|k| mode_entries(geom, k))
        .filter(is_deck_invariant)
        .collect();
    all.sort_by(order);
    let cut = truncate(&mut all, count);
    let next = (max_mode + 1) as f64;
    let bound = next * (next * geom.half_length).tanh() / geom.weights.0;
    if cut.map_or(true, |last| last >= bound) {
        return Err(Error::Truncation { max_mode, count });
    }
    Ok(SteklovSpectrum {
        entries: all,
        geometry: Some(*geom),
        boundary_length: geom.boundary_length(),
    })
}

impl SteklovSpectrum {
    /// Eigenvalues counted with multiplicity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| core::iter::repeat(e.sigma).take(e.multiplicity as usize))
            .collect()
    }

    /// `σ_k`, counted with multiplicity from `σ_0 = 0`.
    pub fn sigma(&self, k: usize) -> Result<f64> {
        let mut seen = 0;
        for e in &self.entries {
            seen += e.multiplicity as usize;
            if k < seen {
                return Ok(e.sigma);
            }
        }
        Err(Error::Index {
            index: k,
            len: expanded_len(&self.entries),
        })
    }
}

/// `σ_k · boundary_length`.
pub fn normalized_eigenvalue(spec: &SteklovSpectrum, k: usize, boundary_length: f64) -> Result<f64> {
    Ok(spec.sigma(k)? * boundary_length)
}

/// Number of eigenvalues, with multiplicity, within `tol` of `σ_k`.
pub fn multiplicity_report(spec: &SteklovSpectrum, k: usize, tol: f64) -> Result<usize> {
    let s = spec.sigma(k)?;
    Ok(spec
        .entries
        .iter()
        .filter(|e| (e.sigma - s).abs() <= tol)
        .map(|e| e.multiplicity as usize)
        .sum())
}

/// Value at `(s, θ)` of the eigenfunction of a cylinder entry; `copy`
/// selects the cosine (0) or sine (1) partner for `k ≥ 1`. The function is
/// normalized by its boundary values, which are the entry's boundary vector
/// mapped back through `P^{-1/2}`.
pub fn eigenfunction(geom: &CylinderGeometry, e: &SpectrumEntry, copy: u32, s: f64, theta: f64) -> f64 {
    let l = geom.half_length;
    let a = e.boundary_vector[0] / geom.weights.0.sqrt();
    let b = e.boundary_vector[1] / geom.weights.1.sqrt();
    let (even, odd) = (0.5 * (a + b), 0.5 * (b - a));
    let radial = if e.mode == 0 {
        even + odd * s / l
    } else {
        let k = e.mode as f64;
        even * (k * s).cosh() / (k * l).cosh() + odd * (k * s).sinh() / (k * l).sinh()
    };
    let angle = e.mode as f64 * theta;
    radial * if copy == 0 { angle.cos() } else { angle.sin() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_eigenvalues() {
        let g = CylinderGeometry::new(1.0, (1.0, 1.0)).unwrap();
        let [(a, _), (b, _)] = sym_eig2(dtn_mode_matrix(&g, 0));
        assert!(a.abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
        let [(a, _), (b, _)] = sym_eig2(dtn_mode_matrix(&g, 1));
        assert!((a - 1f64.tanh()).abs() < 1e-15);
        assert!((b - 1.0 / 1f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn normalized_first_eigenvalue() {
        let g = CylinderGeometry::new(1.0, (1.0, 1.0)).unwrap();
        let s = steklov_spectrum(&g, 8, 10).unwrap();
        assert_eq!(s.sigma(0).unwrap(), 0.0);
        let v = normalized_eigenvalue(&s, 1, g.boundary_length()).unwrap();
        assert!((v - 1f64.tanh() * 2.0 * TAU).abs() < 1e-13);
        let d = disk_spectrum(4, 5).unwrap();
        assert!((normalized_eigenvalue(&d, 1, TAU).unwrap() - TAU).abs() < 1e-15);
        assert_eq!(multiplicity_report(&d, 1, 1e-12).unwrap(), 2);
    }

    #[test]
    fn multiplicity_jumps_where_one_over_l_meets_tanh() {
        let g = CylinderGeometry::new(1.0, (1.0, 1.0)).unwrap();
        let s = steklov_spectrum(&g, 8, 10).unwrap();
        assert_eq!(multiplicity_report(&s, 1, 1e-10).unwrap(), 2);
        // L tanh L = 1 by Newton: σ1 = tanh L = 1/L picks up the k = 0 mode
        let mut l = 1.2f64;
        for _ in 0..30 {
            l -= (l * l.tanh() - 1.0) / (l.tanh() + l / l.cosh().powi(2));
        }
        let g = CylinderGeometry::new(l, (1.0, 1.0)).unwrap();
        let s = steklov_spectrum(&g, 8, 10).unwrap();
        assert_eq!(multiplicity_report(&s, 1, 1e-10).unwrap(), 3);
    }

    #[test]
    fn truncation_and_weights() {
        let g = CylinderGeometry::new(1.0, (1.0, 1.0)).unwrap();
        assert!(matches!(steklov_spectrum(&g, 1, 20), Err(Error::Truncation { .. })));
        let w = CylinderGeometry::new(1.0, (1.0, 2.0)).unwrap();
        assert!(matches!(moebius_spectrum(&w, 8, 4), Err(Error::WeightMismatch(..))));
    }
}
