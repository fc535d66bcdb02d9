//! Numerical verification of the defining conditions of a free boundary
//! branched minimal surface, and oracles for the Hopf differential.
//!
//! Every check returns a [`CheckReport`]; a failing surface is a result,
//! not an error.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::vec3::{self, CVec3, Vec3};
use crate::weierstrass::{DomainKind, Immersion, QuadDiffForm};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Default tolerances of every check, in one place.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Tolerances {
    /// Finite-difference harmonicity and conformality residuals.
    pub minimal: f64,
    pub free_boundary: f64,
    pub hopf_boundary: f64,
    /// `|X∘T - X|`
    pub deck: f64,
    /// Floating point residual of the transformation laws.
    pub laws: f64,
    /// Relative disagreement between the finite-difference and the closed
    /// form Hopf coefficient.
    pub hopf_oracle: f64,
    /// Constancy of `z²φ` when `φ` is rational.
    pub fit_symbolic: f64,
    /// Constancy of `z²φ` from samples.
    pub fit_sampled: f64,
    /// `|⟨A,A⟩| / |A|²` of a branch expansion.
    pub isotropy: f64,
    /// Agreement of the limit normal with the Gauss map near a branch point.
    pub limit_normal: f64,
    /// `|φ|` at branch points.
    pub hopf_at_branch: f64,
    /// `|C0|` below which the certificate accepts `C0 = 0`.
    pub certificate: f64,
    /// Distance kept from branch points and poles by interior samples.
    pub clearance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            minimal: 1e-4,
            free_boundary: 1e-8,
            hopf_boundary: 1e-8,
            deck: 1e-8,
            laws: 1e-12,
            hopf_oracle: 1e-5,
            fit_symbolic: 1e-10,
            fit_sampled: 1e-6,
            isotropy: 1e-6,
            limit_normal: 1e-4,
            hopf_at_branch: 1e-10,
            certificate: 1e-14,
            clearance: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckReport {
    pub check_name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_point: C64,
}

impl CheckReport {
    /// Reduce `(point, residual)` pairs to a report. The first point wins
    /// ties; a NaN residual counts as an infinite one.
    pub fn from_residuals<I>(name: &str, tolerance: f64, residuals: I) -> Self
    where
        I: IntoIterator<Item = (C64, f64)>,
    {
        let mut worst = C64::new(0.0, 0.0);
        let mut max = 0.0;
        let mut samples = 0;
        for (z, r) in residuals {
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if samples == 0 || r > max {
                max = r;
                worst = z;
            }
            samples += 1;
        }
        CheckReport {
            check_name: name.into(),
            samples,
            max_residual: max,
            tolerance,
            passed: max <= tolerance,
            worst_point: worst,
        }
    }
}

/// Polar grid `r_min ≤ |z| ≤ r_max`, geometric in the radius, with the
/// angles offset by half a step from `offset`.
pub fn polar_grid(r_min: f64, r_max: f64, n_r: usize, n_theta: usize, offset: f64) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_r * n_theta);
    for i in 0..n_r {
        let t = if n_r > 1 { i as f64 / (n_r - 1) as f64 } else { 0.0 };
        let r = r_min * (r_max / r_min).powf(t);
        for j in 0..n_theta {
            let a = offset + (j as f64 + 0.5) * TAU / n_theta as f64;
            out.push(C64::from_polar(r, a));
        }
    }
    out
}

/// Rectangular grid on `[u_min, u_max] × [v_min, v_max]`, including edges.
pub fn rect_grid(u: (f64, f64), v: (f64, f64), n_u: usize, n_v: usize) -> Vec<C64> {
    let lerp = |(a, b): (f64, f64), k: usize, n: usize| {
        if n > 1 {
            a + (b - a) * k as f64 / (n - 1) as f64
        } else {
            a
        }
    };
    let mut out = Vec::with_capacity(n_u * n_v);
    for j in 0..n_v {
        for i in 0..n_u {
            out.push(C64::new(lerp(u, i, n_u), lerp(v, j, n_v)));
        }
    }
    out
}

/// Natural length scale of the chart at `z`: `|z|` on annular charts, one
/// otherwise.
fn chart_scale(kind: DomainKind, z: C64) -> f64 {
    match kind {
        DomainKind::CanonicalAnnulus { .. } | DomainKind::PuncturedPlane => z.norm(),
        DomainKind::Strip { .. } | DomainKind::UnitDisk => 1.0,
    }
}

const FD_STEP: f64 = 1e-3;

/// Finite-difference harmonicity and conformality at one point.
///
/// Returns the largest of
/// - `|ΔX| ℓ / |X_u|` (five-point Laplacian, `ℓ` the chart scale),
/// - `abs(|X_u| - |X_v|) / max(|X_u|, |X_v|)`,
/// - `|⟨X_u, X_v⟩| / (|X_u| |X_v|)`.
pub fn minimal_residual(s: &dyn Immersion, z: C64) -> Result<f64> {
    let l = chart_scale(s.domain().kind, z);
    let h = FD_STEP * l;
    let ih = C64::new(0.0, h);
    let hr = C64::new(h, 0.0);
    let e = s.increment(z, hr)?;
    let w = s.increment(z, -hr)?;
    let n = s.increment(z, ih)?;
    let so = s.increment(z, -ih)?;
    let lap = vec3::scale(1.0 / (h * h), vec3::add(vec3::add(e, w), vec3::add(n, so)));
    let xu = vec3::scale(0.5 / h, vec3::sub(e, w));
    let xv = vec3::scale(0.5 / h, vec3::sub(n, so));
    let (nu, nv) = (vec3::norm(xu), vec3::norm(xv));
    let big = nu.max(nv);
    if big == 0.0 {
        return Err(Error::BranchPoint { z });
    }
    let harmonic = vec3::norm(lap) * l / big;
    let conformal = (nu - nv).abs() / big;
    let orthogonal = vec3::dot(xu, xv).abs() / (nu * nv);
    Ok(harmonic.max(conformal).max(orthogonal))
}

/// Harmonicity and almost conformality on a set of interior points. The
/// caller keeps the points away from branch points.
pub fn check_minimal_immersion(s: &dyn Immersion, points: &[C64], tol: f64) -> Result<CheckReport> {
    let mut res = Vec::with_capacity(points.len());
    for &z in points {
        res.push((z, minimal_residual(s, z)?));
    }
    Ok(CheckReport::from_residuals("minimal_immersion", tol, res))
}

/// Free boundary residuals at one boundary point with outward conormal
/// direction `nu` in the parameter plane: `||X| - 1|` and the distance
/// between the unit conormal of the surface and the unit position vector.
pub fn free_boundary_residual(s: &dyn Immersion, z: C64, nu: C64) -> Result<(f64, f64)> {
    let x = s.position(z)?;
    let conormal = s.differential(z, nu)?;
    let r = vec3::norm(x);
    let c = vec3::norm(conormal);
    if c == 0.0 {
        return Err(Error::BranchPoint { z });
    }
    let sphere = (r - 1.0).abs();
    let orth = vec3::dist(vec3::scale(1.0 / c, conormal), vec3::scale(1.0 / r, x));
    Ok((sphere, orth))
}

/// Boundary on the unit sphere, met orthogonally.
pub fn check_free_boundary(s: &dyn Immersion, samples_per_curve: usize, tol: f64) -> Result<CheckReport> {
    let pts = s.domain().boundary_samples(samples_per_curve)?;
    let mut res = Vec::with_capacity(pts.len());
    for (z, nu) in pts {
        let (a, b) = free_boundary_residual(s, z, nu)?;
        res.push((z, a.max(b)));
    }
    Ok(CheckReport::from_residuals("free_boundary", tol, res))
}

/// Tangent vector `t` of the boundary curve through `z` used in the reality
/// test `Im(φ t²) = 0`: `iz` on circles about the origin, `1` on the
/// horizontal edges of a strip.
pub fn boundary_tangent(kind: DomainKind, z: C64) -> C64 {
    match kind {
        DomainKind::Strip { .. } => C64::new(1.0, 0.0),
        _ => C64::new(0.0, 1.0) * z,
    }
}

/// Reality of the Hopf differential along the boundary.
///
/// The residual at a sample is `|Im q| / max(|q|, 1)` with `q = φ(z) t²`:
/// relative for large values, absolute near zero. Surfaces without a
/// closed-form Hopf coefficient are handled by the finite-difference oracle.
pub fn check_hopf_real_on_boundary(s: &dyn Immersion, samples_per_curve: usize, tol: f64) -> Result<CheckReport> {
    let kind = s.domain().kind;
    let pts = s.domain().boundary_samples(samples_per_curve)?;
    let hopf = s.hopf();
    let mut res = Vec::with_capacity(pts.len());
    for (z, _) in pts {
        let phi = match &hopf {
            Some(q) => q.eval(z)?,
            None => fd_hopf_oracle(s, z, None)?,
        };
        let t = boundary_tangent(kind, z);
        let q = phi * t * t;
        res.push((z, q.im.abs() / q.norm().max(1.0)));
    }
    Ok(CheckReport::from_residuals("hopf_real_on_boundary", tol, res))
}

/// `⟨X_zz, N⟩` from a nine-point finite-difference stencil of the
/// immersion, with step `h` (default `1e-4 max(|z|, 1e-2)`).
pub fn fd_hopf_oracle(s: &dyn Immersion, z: C64, h: Option<f64>) -> Result<C64> {
    let h = h.unwrap_or(1e-4 * z.norm().max(1e-2));
    let hr = C64::new(h, 0.0);
    let ih = C64::new(0.0, h);
    let inc = |d: C64| s.increment(z, d);
    let xuu = vec3::scale(1.0 / (h * h), vec3::add(inc(hr)?, inc(-hr)?));
    let xvv = vec3::scale(1.0 / (h * h), vec3::add(inc(ih)?, inc(-ih)?));
    let cross = vec3::sub(
        vec3::add(inc(hr + ih)?, inc(-hr - ih)?),
        vec3::add(inc(hr - ih)?, inc(-hr + ih)?),
    );
    let xuv = vec3::scale(0.25 / (h * h), cross);
    let n = s.normal(z)?;
    // X_zz = (X_uu - X_vv - 2i X_uv) / 4
    let re = 0.25 * (vec3::dot(xuu, n) - vec3::dot(xvv, n));
    let im = -0.5 * vec3::dot(xuv, n);
    Ok(C64::new(re, im))
}

/// Agreement between the oracle and the closed-form Hopf coefficient.
///
/// The residual is relative to `|φ|`, with an absolute floor of `1e-8`
/// protecting the comparison at umbilical points.
pub fn check_hopf_oracle(s: &dyn Immersion, hopf: &QuadDiffForm, points: &[C64], tol: f64) -> Result<CheckReport> {
    let mut res = Vec::with_capacity(points.len());
    for &z in points {
        let exact = hopf.eval(z)?;
        let fd = fd_hopf_oracle(s, z, None)?;
        res.push((z, (fd - exact).norm() / exact.norm().max(1e-8)));
    }
    Ok(CheckReport::from_residuals("hopf_oracle", tol, res))
}

/// `|φ|` at every branch point of the surface.
pub fn check_hopf_at_branch_points(s: &dyn Immersion, tol: f64) -> Result<CheckReport> {
    let pts = s.branch_points()?;
    let mut res = Vec::with_capacity(pts.len());
    if let Some(q) = s.hopf() {
        for b in pts {
            res.push((b.point, q.eval(b.point)?.norm()));
        }
    }
    Ok(CheckReport::from_residuals("hopf_at_branch_points", tol, res))
}

/// Leading term `X_z = A (z - p)^ν + O(|z - p|^{ν+1})` at a branch point.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BranchExpansion {
    pub center: C64,
    pub order: u32,
    pub leading_vector: CVec3,
    /// `|⟨A, A⟩|`, complex bilinear.
    pub isotropy_residual: f64,
    /// `α × β / |α × β|` with `A = (α - iβ)/2`.
    pub limit_normal: Vec3,
    /// RMS fit residual of the chosen order, relative to `|A| radius^ν`.
    pub fit_residual: f64,
}

impl BranchExpansion {
    /// `|⟨A, A⟩| / |A|²`
    pub fn relative_isotropy(&self) -> f64 {
        let a = vec3::cnorm(self.leading_vector);
        self.isotropy_residual / (a * a)
    }
}

pub const EXPANSION_SAMPLES: usize = 64;
pub const MAX_BRANCH_ORDER: u32 = 6;

/// Least-squares fit of `X_z` on the circle `|z - p| = radius` against
/// `A (z - p)^ν` for `ν = 1..=6`.
///
/// On a circle the monomials are orthogonal, so the least-squares `A` is
/// the mean of `X_z (z - p)^{-ν}`. Fails with `FitAmbiguous` when the
/// runner-up order fits within a factor two of the best one, which is what
/// happens at regular points.
pub fn branch_expansion(s: &dyn Immersion, p: C64, radius: f64) -> Result<BranchExpansion> {
    let m = EXPANSION_SAMPLES;
    let mut data = Vec::with_capacity(m);
    for k in 0..m {
        let d = C64::from_polar(radius, TAU * (k as f64 + 0.5) / m as f64);
        data.push((d, s.x_z(p + d)?));
    }
    let mut fits: Vec<(u32, CVec3, f64)> = Vec::new();
    for nu in 1..=MAX_BRANCH_ORDER {
        let mut a = [C64::new(0.0, 0.0); 3];
        for (d, xz) in &data {
            a = vec3::cadd(a, vec3::cscale(d.powu(nu).inv(), *xz));
        }
        let a = vec3::cscale(C64::new(1.0 / m as f64, 0.0), a);
        let mut ss = 0.0;
        for (d, xz) in &data {
            let model = vec3::cscale(d.powu(nu), a);
            let diff: CVec3 = core::array::from_fn(|i| xz[i] - model[i]);
            ss += vec3::cnorm(diff).powi(2);
        }
        fits.push((nu, a, (ss / m as f64).sqrt()));
    }
    let mut order: Vec<usize> = (0..fits.len()).collect();
    order.sort_by(|&i, &j| fits[i].2.total_cmp(&fits[j].2).then(i.cmp(&j)));
    let (best, runner) = (&fits[order[0]], &fits[order[1]]);
    if runner.2 <= 2.0 * best.2 {
        return Err(Error::FitAmbiguous {
            best: best.0,
            runner_up: runner.0,
        });
    }
    let (nu, a, rms) = *best;
    let alpha = vec3::scale(2.0, vec3::re(a));
    let beta = vec3::scale(-2.0, vec3::im(a));
    let cross = vec3::cross(alpha, beta);
    if vec3::norm(cross) == 0.0 {
        return Err(Error::BranchPoint { z: p });
    }
    Ok(BranchExpansion {
        center: p,
        order: nu,
        leading_vector: a,
        isotropy_residual: vec3::cdot(a, a).norm(),
        limit_normal: vec3::normalize(cross),
        fit_residual: rms / (vec3::cnorm(a) * radius.powi(nu as i32)),
    })
}

/// Largest distance between the fitted limit normal and the surface normal
/// at `p + eps e^{2πik/rays}`, `k = 0..rays`.
pub fn limit_normal_deviation(s: &dyn Immersion, e: &BranchExpansion, rays: usize, eps: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..rays {
        let z = e.center + C64::from_polar(eps, TAU * k as f64 / rays as f64);
        worst = worst.max(vec3::dist(s.normal(z)?, e.limit_normal));
    }
    Ok(worst)
}
