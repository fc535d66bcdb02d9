//! Deck involution of the canonical annulus, the transformation laws a
//! Möbius band imposes on its Weierstrass data and Hopf differential, and
//! the certificate showing that a free boundary Möbius band would have to
//! be totally geodesic.
//!
//! Pullbacks by the anti-holomorphic map `T(z) = -1/z̄` are written as
//! `dz̄²`-forms: `T*(φ dw²) = φ(T(z)) z̄⁻⁴ dz̄²`, and the law demands that
//! this equal `-conj(φ(z)) dz̄²`. Both sides are compared coefficient by
//! coefficient in that basis.
//!
//! Symbolically, writing `w = z̄` and `r*` for `r` with conjugated
//! coefficients, the three laws become the rational identities
//!
//! - `g(-1/w) g*(w) + 1 = 0`,
//! - `f(-1/w) + w² (fg²)*(w) = 0`,
//! - `φ(-1/w) w⁻⁴ + φ*(w) = 0`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::rational::{Coeff, RationalComplexFunction, RationalFunction};
use crate::vec3;
use crate::weierstrass::{normalize_angle, Immersion, QuadDiffForm, WeierstrassSurface};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// `T(z) = -1/z̄`
pub fn deck(z: C64) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::Domain {
            z,
            reason: "the deck map is undefined at 0",
        });
    }
    Ok(-z.conj().inv())
}

/// Angular margin kept from a slit by deck samples.
pub const SLIT_MARGIN: f64 = 0.05;

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(2.0 * PI - d)
}

/// `n` sample points of `A_{1/r,r}` such that neither `z` nor `T(z)` lies
/// near the slit at angle `slit` or within `clearance` of a point of
/// `avoid`.
pub fn deck_samples(n: usize, r: f64, slit: Option<f64>, avoid: &[C64], clearance: f64) -> Result<Vec<C64>> {
    let ok = |z: C64| {
        slit.map_or(true, |t| angle_gap(z.arg(), t) > SLIT_MARGIN)
            && avoid.iter().all(|p| (z - p).norm() >= clearance)
    };
    let mut out = Vec::with_capacity(n);
    let mut pool = 2 * n + 16;
    while out.len() < n {
        out.clear();
        for z in crate::sampling::annulus_points(pool, 1.0 / r, r) {
            if ok(z) && ok(deck(z)?) {
                out.push(z);
                if out.len() == n {
                    break;
                }
            }
        }
        if pool > 64 * n + 1024 {
            return Err(Error::Convergence("too few admissible deck samples".to_string()));
        }
        pool *= 2;
    }
    Ok(out)
}

/// `max |X(T(z)) - X(z)|` over the samples.
pub fn check_deck_invariance(s: &dyn Immersion, points: &[C64], tol: f64) -> Result<CheckReport> {
    let mut residuals = Vec::with_capacity(points.len());
    for &z in points {
        let d = vec3::dist(s.position(deck(z)?)?, s.position(z)?);
        residuals.push((z, d));
    }
    Ok(CheckReport::from_residuals("deck_invariance", tol, residuals))
}

/// `max |g(T(z)) + 1/conj(g(z))|`
pub fn check_gauss_law(s: &WeierstrassSurface, points: &[C64], tol: f64) -> Result<CheckReport> {
    let mut residuals = Vec::with_capacity(points.len());
    for &z in points {
        let lhs = s.g.eval(deck(z)?)?;
        let gz = s.g.eval(z)?;
        if gz == C64::new(0.0, 0.0) {
            return Err(Error::Pole { z });
        }
        residuals.push((z, (lhs + gz.conj().inv()).norm()));
    }
    Ok(CheckReport::from_residuals("gauss_law", tol, residuals))
}

/// `max |f(T(z)) + conj(f(z) (z g(z))²)|`
pub fn check_f_law(s: &WeierstrassSurface, points: &[C64], tol: f64) -> Result<CheckReport> {
    let mut residuals = Vec::with_capacity(points.len());
    for &z in points {
        let lhs = s.f.eval(deck(z)?)?;
        let rhs = (z * z * s.fg2.eval(z)?).conj();
        residuals.push((z, (lhs + rhs).norm()));
    }
    Ok(CheckReport::from_residuals("f_law", tol, residuals))
}

/// Residual of the Hopf law at one point: `|φ(T(z)) z̄⁻⁴ + conj(φ(z))|`.
pub fn hopf_law_residual_at(phi: &RationalComplexFunction, z: C64) -> Result<f64> {
    let zb = z.conj();
    let pulled = phi.eval(deck(z)?)? / (zb * zb * zb * zb);
    Ok((pulled + phi.eval(z)?.conj()).norm())
}

/// `max |φ(T(z)) z̄⁻⁴ + conj(φ(z))|` for a closed-form Hopf differential.
pub fn hopf_law_residual(hopf: &QuadDiffForm, points: &[C64], tol: f64) -> Result<CheckReport> {
    let phi = hopf
        .as_symbolic()
        .ok_or_else(|| Error::Simplification("the Hopf law needs a closed-form differential".into()))?;
    let mut residuals = Vec::with_capacity(points.len());
    for &z in points {
        residuals.push((z, hopf_law_residual_at(phi, z)?));
    }
    Ok(CheckReport::from_residuals("hopf_law", tol, residuals))
}

fn minus_inverse<T: Coeff>(r: &RationalFunction<T>) -> Result<RationalFunction<T>> {
    r.compose_scaled_inverse(&-T::one())
}

/// Left-hand sides of the three laws as rational functions of `w = z̄`;
/// each vanishes identically exactly when its law holds.
pub fn law_defects<T: Coeff>(
    f: &RationalFunction<T>,
    g: &RationalFunction<T>,
    hopf: &RationalFunction<T>,
) -> Result<[RationalFunction<T>; 3]> {
    let gauss = minus_inverse(g)?
        .try_mul(&g.conj_coeffs())?
        .try_add(&RationalFunction::constant(T::one()))?;
    let fg2 = f.try_mul(g)?.try_mul(g)?;
    let f_law = minus_inverse(f)?.try_add(&RationalFunction::monomial(T::one(), 2).try_mul(&fg2.conj_coeffs())?)?;
    let hopf_law = minus_inverse(hopf)?
        .try_mul(&RationalFunction::monomial(T::one(), -4))?
        .try_add(&hopf.conj_coeffs())?;
    Ok([gauss, f_law, hopf_law])
}

/// Outcome of the three laws for one surface.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LawReport {
    pub gauss: CheckReport,
    pub f: CheckReport,
    pub hopf: CheckReport,
    /// Largest coefficient of each rational defect in floating point.
    pub symbolic_residuals: [f64; 3],
    /// Whether each defect vanishes identically in exact arithmetic, when
    /// exact data is available.
    pub exact_identities: Option<[bool; 3]>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.gauss.passed && self.f.passed && self.hopf.passed
    }
}

/// Evaluate all three laws at the samples and as rational identities.
pub fn verify_laws(s: &WeierstrassSurface, points: &[C64], tol: f64) -> Result<LawReport> {
    let hopf = s.hopf_coefficient();
    let phi = hopf.as_symbolic().expect("Weierstrass Hopf form is symbolic");
    let defects = law_defects(&s.f, &s.g, phi)?;
    let symbolic_residuals = defects.map(|d| d.numerator().max_coeff_magnitude());
    let exact_identities = match s.exact() {
        Some(e) => Some(law_defects(&e.f, &e.g, &e.hopf)?.map(|d| d.is_zero())),
        None => None,
    };
    Ok(LawReport {
        gauss: check_gauss_law(s, points, tol)?,
        f: check_f_law(s, points, tol)?,
        hopf: hopf_law_residual(&hopf, points, tol)?,
        symbolic_residuals,
        exact_identities,
    })
}

/// `|C0|` at or below which the certificate treats `C0` as zero.
pub const CERTIFICATE_ZERO: f64 = 1e-14;

/// One sample of the Hopf law mismatch for `Q = C0/z² dz²`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MismatchSample {
    pub z: C64,
    /// Law residual evaluated numerically from `Q`.
    pub measured: f64,
    /// `|C0 + conj(C0)| / |z|²` from the symbolic pullback.
    pub symbolic: f64,
}

/// Record of the argument that a free boundary minimal Möbius band with
/// Hopf differential `C0/z² dz²` forces `C0 = 0`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ImpossibilityCertificate {
    #[cfg_attr(feature = "serde", serde(rename = "R"))]
    pub r: f64,
    #[cfg_attr(feature = "serde", serde(rename = "C0"))]
    pub c0: C64,
    /// Coefficient `a` in `T*(C0/z² dz²) = a/z̄² dz̄²`, from the pullback of
    /// the rational function. Equals `C0`.
    pub pullback_coefficient: C64,
    /// Coefficient demanded by the Hopf law: `-conj(C0)`.
    pub required_coefficient: C64,
    /// `pullback - required = C0 + conj(C0)`.
    pub mismatch_coefficient: C64,
    /// `T*(C0/z² dz²)`, as text.
    pub pullback: String,
    pub required_law: String,
    pub mismatch_samples: Vec<MismatchSample>,
    pub conclusion: String,
    /// `|C0| <= CERTIFICATE_ZERO`.
    pub consistent: bool,
    pub verdict: String,
    pub reasoning: Vec<String>,
}

/// Sample points `z_k = r_k e^{iπk/8}`, `k = 0..16`, with `r_k` cycling
/// through `1, R, 1/R, √R`.
pub fn certificate_points(r: f64) -> Vec<C64> {
    let radii = [1.0, r, 1.0 / r, r.sqrt()];
    (0..16)
        .map(|k| C64::from_polar(radii[k % 4], PI * k as f64 / 8.0))
        .collect()
}

pub fn impossibility_certificate(r: f64, c0: C64) -> Result<ImpossibilityCertificate> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::ParamRange {
            name: "R",
            value: r,
            range: "(1, inf)",
        });
    }
    let one = C64::new(1.0, 0.0);
    let phi = RationalFunction::monomial(c0, -2);
    let pulled = minus_inverse(&phi)?.try_mul(&RationalFunction::monomial(one, -4))?;
    let pullback_coefficient = RationalFunction::monomial(one, 2)
        .try_mul(&pulled)?
        .as_constant()
        .ok_or_else(|| Error::Simplification("pullback is not a multiple of 1/z̄²".into()))?;
    let required_coefficient = -c0.conj();
    let mismatch_coefficient = pullback_coefficient - required_coefficient;
    let mut mismatch_samples = Vec::with_capacity(16);
    for z in certificate_points(r) {
        mismatch_samples.push(MismatchSample {
            z,
            measured: hopf_law_residual_at(&phi, z)?,
            symbolic: mismatch_coefficient.norm() / z.norm_sqr(),
        });
    }
    let consistent = c0.norm() <= CERTIFICATE_ZERO;
    let verdict = if consistent {
        "consistent: C0 = 0, the totally geodesic case"
    } else {
        "inconsistent unless C0 = 0"
    };
    let reasoning = [
        "on the canonical annulus the Hopf differential of a free boundary minimal annulus is C0/z² dz² with C0 real",
        "a Möbius band quotient requires T*Q = -conj(Q) for the deck map T(z) = -1/z̄",
        "T*(C0/z² dz²) = C0/z̄² dz̄² while -conj(Q) = -conj(C0)/z̄² dz̄², so C0 + conj(C0) = 0",
        "C0 real and C0 + conj(C0) = 0 give C0 = 0",
        "C0 = 0 means the Hopf differential vanishes and the surface is totally geodesic, a flat disk",
        "a planar surface cannot be a Möbius band, a contradiction",
    ];
    Ok(ImpossibilityCertificate {
        r,
        c0,
        pullback_coefficient,
        required_coefficient,
        mismatch_coefficient,
        pullback: alloc::format!("({pullback_coefficient}) / z̄² dz̄²"),
        required_law: alloc::format!("({required_coefficient}) / z̄² dz̄²"),
        mismatch_samples,
        conclusion: "C0 must be 0".to_string(),
        consistent,
        verdict: verdict.to_string(),
        reasoning: reasoning.iter().map(|s| s.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deck_examples() {
        assert_eq!(deck(C64::new(1.0, 0.0)).unwrap(), C64::new(-1.0, 0.0));
        assert_eq!(deck(C64::new(2.0, 0.0)).unwrap(), C64::new(-0.5, 0.0));
        assert!(deck(C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn certificate_examples() {
        let c = impossibility_certificate(2.0, C64::new(1.0, 0.0)).unwrap();
        assert!((c.mismatch_samples[0].measured - 2.0).abs() < 1e-15);
        assert!(!c.consistent);
        let c = impossibility_certificate(1.5, C64::new(-0.37, 0.0)).unwrap();
        let at_i = c.mismatch_samples[4];
        assert!((at_i.z - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((at_i.measured - 0.74).abs() < 1e-15);
        let c = impossibility_certificate(2.0, C64::new(0.0, 0.0)).unwrap();
        assert!(c.consistent);
        assert!(c.mismatch_samples.iter().all(|m| m.measured == 0.0));
        assert!(impossibility_certificate(1.0, C64::new(1.0, 0.0)).is_err());
    }
}
