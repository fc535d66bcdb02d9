//! Hopf differentials of free boundary annuli.
//!
//! On the canonical annulus a free boundary minimal annulus has Hopf
//! differential `(C0 / z²) dz²` with `C0` real. This module fits that form,
//! classifies surfaces accordingly and provides the automorphisms of the
//! canonical annulus.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::rational::{RationalComplexFunction, RationalFunction};
use crate::weierstrass::{Domain, DomainKind, Immersion, QuadDiffForm, QuadDiffRepr};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Angles sampled on each fitting circle.
pub const FIT_ANGLES: usize = 32;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HopfFitResult {
    pub c0: C64,
    /// `max |z²φ(z) - C0|` over the samples; exactly zero when the constancy
    /// was established symbolically.
    pub residual: f64,
    pub samples: usize,
    /// Whether `z²φ` simplifies to a constant rational function, when `φ`
    /// is known in closed form.
    pub symbolic_constant: Option<bool>,
}

/// Sampling circles `|z| = R^{±1/2}` for the annulus; two interior circles
/// for the disk.
fn fit_radii(domain: &Domain) -> Result<[f64; 2]> {
    match domain.kind {
        DomainKind::CanonicalAnnulus { r } => Ok([r.powf(-0.5), r.powf(0.5)]),
        DomainKind::UnitDisk => Ok([0.5, 0.5f64.sqrt()]),
        DomainKind::Strip { .. } | DomainKind::PuncturedPlane => Err(Error::Domain {
            z: C64::new(0.0, 0.0),
            reason: "circle sampling needs an annulus or disk chart",
        }),
    }
}

/// `z²φ` on circular charts; on the periodic strip, where `w = e^{iz}`
/// turns the chart into an annulus, the same quantity is `-φ`.
fn normalized(domain: &Domain, phi: &RationalComplexFunction) -> Result<RationalComplexFunction> {
    match domain.kind {
        DomainKind::Strip { .. } => Ok(phi.neg()),
        _ => RationalFunction::monomial(C64::new(1.0, 0.0), 2).try_mul(phi),
    }
}

fn sample_points(domain: &Domain, per_circle: usize) -> Result<Vec<C64>> {
    if let DomainKind::Strip { half_width } = domain.kind {
        let mut out = Vec::new();
        for v in [-0.5 * half_width, 0.5 * half_width] {
            for k in 0..per_circle {
                out.push(C64::new(-core::f64::consts::PI + TAU * (k as f64 + 0.5) / per_circle as f64, v));
            }
        }
        return Ok(out);
    }
    let offset = domain.slit.unwrap_or(0.0);
    let mut out = Vec::new();
    for r in fit_radii(domain)? {
        out.extend(crate::sampling::circle_points(per_circle, r, offset));
    }
    Ok(out)
}

/// Fit `φ = C0 / z²`.
///
/// With a closed-form `φ`, constancy of `z²φ` is decided symbolically and
/// `C0` is that constant. Otherwise (or when it is not constant) `C0` is
/// the sample mean and the residual the largest deviation from it.
pub fn fit_c0(s: &dyn Immersion, per_circle: usize) -> Result<HopfFitResult> {
    let domain = *s.domain();
    let points = sample_points(&domain, per_circle)?;
    let hopf = s.hopf();
    let symbolic = match hopf.as_ref().and_then(QuadDiffForm::as_symbolic) {
        Some(phi) => Some(normalized(&domain, phi)?),
        None => None,
    };
    if let Some(c) = symbolic.as_ref().and_then(|q| q.as_constant()) {
        return Ok(HopfFitResult {
            c0: c,
            residual: 0.0,
            samples: points.len(),
            symbolic_constant: Some(true),
        });
    }
    let mut values = Vec::with_capacity(points.len());
    for &z in &points {
        let v = match &symbolic {
            Some(q) => q.eval(z)?,
            None => {
                let phi = crate::checks::fd_hopf_oracle(s, z, None)?;
                match domain.kind {
                    DomainKind::Strip { .. } => -phi,
                    _ => z * z * phi,
                }
            }
        };
        values.push(v);
    }
    let n = values.len() as f64;
    let c0 = values.iter().fold(C64::new(0.0, 0.0), |a, v| a + v) / n;
    let residual = values.iter().map(|v| (v - c0).norm()).fold(0.0, f64::max);
    Ok(HopfFitResult {
        c0,
        residual,
        samples: values.len(),
        symbolic_constant: symbolic.map(|_| false),
    })
}

/// The alternatives for a minimal annulus meeting the sphere orthogonally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AnnulusClass {
    TotallyGeodesic,
    RegularFreeOfUmbilics,
    NotFreeBoundaryForm,
}

/// Classify by the fitted Hopf form.
///
/// `RegularFreeOfUmbilics` additionally requires that no branch point and
/// no zero of `φ` lies in the closed domain; a surface of the `C0/z²` form
/// that violates this is reported as `NotFreeBoundaryForm`.
pub fn classify_annulus(s: &dyn Immersion, fit: &HopfFitResult, tol: f64) -> Result<AnnulusClass> {
    let hopf = s.hopf();
    let zero = match &hopf {
        Some(q) => q.is_identically_zero(),
        None => fit.c0.norm() <= tol && fit.residual <= tol,
    };
    if zero {
        return Ok(AnnulusClass::TotallyGeodesic);
    }
    if fit.residual > tol || fit.c0.norm() <= tol {
        return Ok(AnnulusClass::NotFreeBoundaryForm);
    }
    if !s.branch_points()?.is_empty() {
        return Ok(AnnulusClass::NotFreeBoundaryForm);
    }
    if let Some(phi) = hopf.as_ref().and_then(QuadDiffForm::as_symbolic) {
        let domain = s.domain();
        if phi.zeros()?.iter().any(|c| domain.contains(c.root)) {
            return Ok(AnnulusClass::NotFreeBoundaryForm);
        }
    }
    Ok(AnnulusClass::RegularFreeOfUmbilics)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AutomorphismKind {
    /// `z ↦ e^{iθ0} z`
    Rotation,
    /// `z ↦ e^{iθ0} / z`
    Inversion,
}

/// Conformal automorphism of `A_{1/R,R}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AnnulusAutomorphism {
    pub theta0: f64,
    pub kind: AutomorphismKind,
    pub r: f64,
}

impl AnnulusAutomorphism {
    pub fn rotation(theta0: f64, r: f64) -> Self {
        AnnulusAutomorphism {
            theta0,
            kind: AutomorphismKind::Rotation,
            r,
        }
    }

    pub fn inversion(theta0: f64, r: f64) -> Self {
        AnnulusAutomorphism {
            theta0,
            kind: AutomorphismKind::Inversion,
            r,
        }
    }

    fn unit(&self) -> C64 {
        C64::from_polar(1.0, self.theta0)
    }

    pub fn apply(&self, z: C64) -> Result<C64> {
        Domain::canonical_annulus(self.r)?.check(z)?;
        Ok(match self.kind {
            AutomorphismKind::Rotation => self.unit() * z,
            AutomorphismKind::Inversion => self.unit() / z,
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        use AutomorphismKind::*;
        let (kind, theta0) = match (self.kind, other.kind) {
            (Rotation, Rotation) => (Rotation, self.theta0 + other.theta0),
            (Rotation, Inversion) => (Inversion, self.theta0 + other.theta0),
            (Inversion, Rotation) => (Inversion, self.theta0 - other.theta0),
            (Inversion, Inversion) => (Rotation, self.theta0 - other.theta0),
        };
        AnnulusAutomorphism {
            theta0,
            kind,
            r: self.r,
        }
    }

    /// Pullback `a*(φ dz²) = φ(a(z)) a'(z)² dz²` of a closed-form
    /// quadratic differential.
    pub fn pullback(&self, q: &QuadDiffForm) -> Result<QuadDiffForm> {
        let QuadDiffRepr::Symbolic(phi) = &q.repr else {
            return Err(Error::Simplification("pullback needs a closed-form differential".into()));
        };
        let c = self.unit();
        let out = match self.kind {
            AutomorphismKind::Rotation => phi.scale_argument(&c).scale(&(c * c)).simplify()?,
            AutomorphismKind::Inversion => phi
                .compose_scaled_inverse(&c)?
                .try_mul(&RationalFunction::monomial(c * c, -4))?,
        };
        Ok(QuadDiffForm::symbolic(out, q.chart))
    }
}

/// Whether the fit describes a free boundary annulus: constant `z²φ` with a
/// real constant, each within its tolerance.
pub fn check_c0_form(fit: &HopfFitResult, tol: f64) -> CheckReport {
    CheckReport::from_residuals(
        "hopf_c0_form",
        tol,
        [(C64::new(0.0, 0.0), fit.residual.max(fit.c0.im.abs()))],
    )
}
