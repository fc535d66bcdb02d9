//! Built-in surfaces.
//!
//! | name                | form         | domain                     |
//! |---------------------|--------------|----------------------------|
//! | `henneberg`         | Weierstrass  | punctured plane            |
//! | `meeks`             | Weierstrass  | punctured plane            |
//! | `catenoid`          | Weierstrass  | canonical annulus `R`      |
//! | `critical_catenoid` | Weierstrass  | canonical annulus `e^{s0}` |
//! | `equatorial_disk`   | direct chart | unit disk                  |
//! | `cerezo`            | direct chart | strip `abs(v) <= 1`        |
//!
//! Henneberg and Meeks are normalized by `X(1) = 0` and use the slit ray at
//! angle `3π/2`, which keeps `z` and `-1/z̄` in the same chart whenever
//! `z` is in the upper half plane or on the real axis.

mod riemann;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

pub use riemann::{EllipseMap, THEODORSEN_POINTS};

use crate::error::{Error, Result};
use crate::rational::{exact, CLUSTER_TOL, ExactRationalFunction, Poly};
use crate::vec3::{self, CVec3, Vec3};
use crate::weierstrass::{int_poly, BranchPoint, Domain, Immersion, QuadDiffForm, WeierstrassSurface};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Slit angle used by the Möbius surfaces.
pub const MOEBIUS_SLIT: f64 = 1.5 * PI;

/// Half width of the Cerezo strip.
pub const CEREZO_HALF_WIDTH: f64 = 1.0;

/// Default bisection tolerance for the critical catenoid parameter.
pub const CRITICAL_TOL: f64 = 1e-13;

const NAMES: [&str; 6] = [
    "henneberg",
    "meeks",
    "catenoid",
    "critical_catenoid",
    "equatorial_disk",
    "cerezo",
];

/// All catalog names in a fixed order.
pub fn catalog_list() -> &'static [&'static str] {
    &NAMES
}

/// Explicit harmonic parametrizations that are not of Weierstrass type
/// (planar images are excluded by the representation).
#[derive(Clone, Debug)]
pub enum DirectChart {
    /// `(u, v, 0)`
    EquatorialDisk,
    /// `(Re W, Im W, 0)` with `W = F(sin z)`, `F` the Riemann map of the
    /// ellipse with semi-axes `cosh 1`, `sinh 1` onto the unit disk.
    Cerezo(EllipseMap),
    /// Arbitrary map, differentiated numerically. Intended for negative
    /// controls.
    Custom { position: fn(C64) -> Vec3 },
}

#[derive(Clone, Debug)]
pub struct DirectChartSurface {
    pub chart: DirectChart,
    pub domain: Domain,
}

const CUSTOM_STEP: f64 = 1e-5;

impl DirectChartSurface {
    pub fn equatorial_disk() -> Self {
        DirectChartSurface {
            chart: DirectChart::EquatorialDisk,
            domain: Domain::unit_disk(),
        }
    }

    pub fn cerezo() -> Result<Self> {
        let h = CEREZO_HALF_WIDTH;
        Ok(DirectChartSurface {
            chart: DirectChart::Cerezo(EllipseMap::new(h.cosh(), h.sinh())?),
            domain: Domain::strip(h)?,
        })
    }

    pub fn custom(position: fn(C64) -> Vec3, domain: Domain) -> Self {
        DirectChartSurface {
            chart: DirectChart::Custom { position },
            domain,
        }
    }

    fn planar(&self) -> bool {
        !matches!(self.chart, DirectChart::Custom { .. })
    }
}

impl Immersion for DirectChartSurface {
    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn position(&self, z: C64) -> Result<Vec3> {
        self.domain.check(z)?;
        match &self.chart {
            DirectChart::EquatorialDisk => Ok([z.re, z.im, 0.0]),
            DirectChart::Cerezo(map) => {
                let w = map.forward(z.sin())?;
                Ok([w.re, w.im, 0.0])
            }
            DirectChart::Custom { position } => Ok(position(z)),
        }
    }

    fn x_z(&self, z: C64) -> Result<CVec3> {
        let half = C64::new(0.5, 0.0);
        let mi = C64::new(0.0, -0.5);
        match &self.chart {
            DirectChart::EquatorialDisk => Ok([half, mi, C64::new(0.0, 0.0)]),
            DirectChart::Cerezo(map) => {
                let dw = map.forward_derivative(z.sin())? * z.cos();
                Ok([half * dw, mi * dw, C64::new(0.0, 0.0)])
            }
            DirectChart::Custom { position } => {
                let h = CUSTOM_STEP;
                let xu = vec3::scale(0.5 / h, vec3::sub(position(z + h), position(z - h)));
                let iz = C64::new(0.0, h);
                let xv = vec3::scale(0.5 / h, vec3::sub(position(z + iz), position(z - iz)));
                Ok(core::array::from_fn(|k| C64::new(0.5 * xu[k], -0.5 * xv[k])))
            }
        }
    }

    fn normal(&self, z: C64) -> Result<Vec3> {
        if self.planar() {
            return Ok([0.0, 0.0, 1.0]);
        }
        let xz = self.x_z(z)?;
        let xu = vec3::scale(2.0, vec3::re(xz));
        let xv = vec3::scale(-2.0, vec3::im(xz));
        let n = vec3::cross(xu, xv);
        if vec3::norm(n) == 0.0 {
            return Err(Error::BranchPoint { z });
        }
        Ok(vec3::normalize(n))
    }

    fn hopf(&self) -> Option<QuadDiffForm> {
        // a planar chart has constant normal, so ⟨X_zz, N⟩ vanishes
        self.planar().then(|| QuadDiffForm::zero(self.domain))
    }

    fn branch_points(&self) -> Result<Vec<BranchPoint>> {
        match self.chart {
            DirectChart::EquatorialDisk | DirectChart::Custom { .. } => Ok(Vec::new()),
            // zeros of cos z in one period window [-π, π); F' never vanishes
            DirectChart::Cerezo(_) => Ok(vec![
                BranchPoint {
                    point: C64::new(-FRAC_PI_2, 0.0),
                    order: 1,
                },
                BranchPoint {
                    point: C64::new(FRAC_PI_2, 0.0),
                    order: 1,
                },
            ]),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SurfaceForm {
    Weierstrass(WeierstrassSurface),
    Direct(DirectChartSurface),
}

impl SurfaceForm {
    pub fn immersion(&self) -> &dyn Immersion {
        match self {
            SurfaceForm::Weierstrass(s) => s,
            SurfaceForm::Direct(s) => s,
        }
    }

    pub fn weierstrass(&self) -> Option<&WeierstrassSurface> {
        match self {
            SurfaceForm::Weierstrass(s) => Some(s),
            SurfaceForm::Direct(_) => None,
        }
    }
}

/// Umbilical points of a minimal surface: isolated zeros of the Hopf
/// differential away from branch points, or the whole surface when it is
/// totally geodesic.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum UmbilicSet {
    Isolated(Vec<C64>),
    Everywhere,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExpectedProperties {
    /// Branch points on the orientable chart.
    pub branch_points: Vec<BranchPoint>,
    pub umbilic_points: UmbilicSet,
    pub deck_invariant: bool,
    pub free_boundary: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub form: SurfaceForm,
    pub expected: ExpectedProperties,
    /// Parameters in effect, including defaults and derived values.
    pub params: Vec<(String, f64)>,
}

fn exact_fn(num: Poly<crate::rational::ExactComplex>, den: Poly<crate::rational::ExactComplex>) -> ExactRationalFunction {
    ExactRationalFunction::new(num, den).expect("nonzero denominator")
}

fn henneberg() -> Result<WeierstrassSurface> {
    let f = exact_fn(int_poly(&[-1, 0, 0, 0, 1]), int_poly(&[0, 0, 0, 0, 1]));
    let g = ExactRationalFunction::identity();
    WeierstrassSurface::from_exact(
        f,
        g,
        1.0,
        Domain::punctured_plane().with_slit(MOEBIUS_SLIT),
        C64::new(1.0, 0.0),
        [0.0; 3],
    )
}

fn meeks() -> Result<WeierstrassSurface> {
    let f = exact_fn(
        Poly::new(vec![exact(0, 2), exact(0, -4), exact(0, 2)]),
        int_poly(&[0, 0, 0, 0, 1]),
    );
    let g = exact_fn(int_poly(&[0, 0, 1, 1]), int_poly(&[-1, 1]));
    WeierstrassSurface::from_exact(
        f,
        g,
        1.0,
        Domain::punctured_plane().with_slit(MOEBIUS_SLIT),
        C64::new(1.0, 0.0),
        [0.0; 3],
    )
}

/// Catenoid `f = c/z²`, `g = z` on `A_{1/R,R}`, normalized so that
/// `X(e^{s+iθ}) = c(-cosh s cos θ, -cosh s sin θ, s)`.
pub fn catenoid(scale: f64, r: f64) -> Result<WeierstrassSurface> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::ParamRange {
            name: "scale",
            value: scale,
            range: "(0, inf)",
        });
    }
    let domain = Domain::canonical_annulus(r)?;
    catenoid_on(scale, domain)
}

fn catenoid_on(scale: f64, domain: Domain) -> Result<WeierstrassSurface> {
    let f = exact_fn(int_poly(&[1]), int_poly(&[0, 0, 1]));
    let g = ExactRationalFunction::identity();
    WeierstrassSurface::from_exact(f, g, scale, domain, C64::new(1.0, 0.0), [-scale, 0.0, 0.0])
}

/// Signed orthogonality defect of the boundary circle `|z| = e^s` of the
/// unit-scale catenoid: `⟨X, N⟩` at `z = e^s`. It vanishes exactly when the
/// position vector is tangent to the surface, i.e. when the rescaled
/// catenoid meets the sphere through that circle orthogonally.
pub fn catenoid_orthogonality_defect(s: f64) -> Result<f64> {
    let cat = catenoid_on(1.0, Domain::punctured_plane())?;
    let z = C64::new(s.exp(), 0.0);
    Ok(vec3::dot(cat.immerse(z, None)?, cat.gauss_map(z)))
}

/// Critical boundary parameter `s0 > 0` by bisection on the orthogonality
/// defect, to interval width `tol`.
pub fn critical_catenoid_s0(tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.5_f64, 2.0_f64);
    let mut flo = catenoid_orthogonality_defect(lo)?;
    let fhi = catenoid_orthogonality_defect(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(Error::Convergence("orthogonality defect does not change sign".to_string()));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = catenoid_orthogonality_defect(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scale and annulus parameter of the critical catenoid: the boundary
/// circles `|z| = R^{±1}` land on the unit sphere.
pub fn critical_catenoid_params(tol: f64) -> Result<(f64, f64, f64)> {
    let s0 = critical_catenoid_s0(tol)?;
    let unit = catenoid_on(1.0, Domain::punctured_plane())?;
    let x = unit.immerse(C64::new(s0.exp(), 0.0), None)?;
    let scale = 1.0 / vec3::norm(x);
    Ok((s0, scale, s0.exp()))
}

fn isolated_umbilics(s: &WeierstrassSurface) -> Result<UmbilicSet> {
    let hopf = s.hopf_coefficient();
    let phi = hopf.as_symbolic().expect("Weierstrass Hopf form is symbolic");
    if phi.is_zero() {
        return Ok(UmbilicSet::Everywhere);
    }
    let branch = s.branch_points();
    let pts = phi
        .zeros()?
        .into_iter()
        .map(|c| c.root)
        .filter(|z| s.domain.contains(*z))
        .filter(|z| branch.iter().all(|b| (b.point - z).norm() > CLUSTER_TOL))
        .collect();
    Ok(UmbilicSet::Isolated(pts))
}

fn lookup_param(name: &'static str, params: &[(&str, f64)], allowed: &[&str]) -> Result<()> {
    for (k, _) in params {
        if !allowed.contains(k) {
            return Err(Error::UnknownParam {
                surface: name,
                name: k.to_string(),
            });
        }
    }
    Ok(())
}

fn param(params: &[(&str, f64)], key: &str, default: f64) -> f64 {
    params
        .iter()
        .rev()
        .find(|(k, _)| *k == key)
        .map_or(default, |&(_, v)| v)
}

/// Look up a catalog surface.
///
/// Parameters: `catenoid` takes `scale` (> 0, default 1) and `R` (> 1,
/// default 2); `critical_catenoid` takes the bisection tolerance `tol`
/// (default `1e-13`). The other surfaces take none.
pub fn catalog_get(name: &str, params: &[(&str, f64)]) -> Result<CatalogEntry> {
    let Some(&name) = NAMES.iter().find(|n| **n == name) else {
        return Err(Error::UnknownSurface(name.to_string()));
    };
    let entry = match name {
        "henneberg" | "meeks" => {
            lookup_param(name, params, &[])?;
            let s = if name == "henneberg" { henneberg()? } else { meeks()? };
            let expected = ExpectedProperties {
                branch_points: s.branch_points().to_vec(),
                umbilic_points: isolated_umbilics(&s)?,
                deck_invariant: true,
                free_boundary: false,
            };
            CatalogEntry {
                name,
                form: SurfaceForm::Weierstrass(s),
                expected,
                params: Vec::new(),
            }
        }
        "catenoid" => {
            lookup_param(name, params, &["scale", "R"])?;
            let scale = param(params, "scale", 1.0);
            let r = param(params, "R", 2.0);
            let s = catenoid(scale, r)?;
            CatalogEntry {
                name,
                form: SurfaceForm::Weierstrass(s),
                expected: ExpectedProperties {
                    branch_points: Vec::new(),
                    umbilic_points: UmbilicSet::Isolated(Vec::new()),
                    deck_invariant: false,
                    free_boundary: false,
                },
                params: vec![("scale".to_string(), scale), ("R".to_string(), r)],
            }
        }
        "critical_catenoid" => {
            lookup_param(name, params, &["tol"])?;
            let tol = param(params, "tol", CRITICAL_TOL);
            if !(tol > 0.0) {
                return Err(Error::ParamRange {
                    name: "tol",
                    value: tol,
                    range: "(0, inf)",
                });
            }
            let (s0, scale, r) = critical_catenoid_params(tol)?;
            CatalogEntry {
                name,
                form: SurfaceForm::Weierstrass(catenoid(scale, r)?),
                expected: ExpectedProperties {
                    branch_points: Vec::new(),
                    umbilic_points: UmbilicSet::Isolated(Vec::new()),
                    deck_invariant: false,
                    free_boundary: true,
                },
                params: vec![
                    ("s0".to_string(), s0),
                    ("scale".to_string(), scale),
                    ("R".to_string(), r),
                ],
            }
        }
        "equatorial_disk" => {
            lookup_param(name, params, &[])?;
            CatalogEntry {
                name,
                form: SurfaceForm::Direct(DirectChartSurface::equatorial_disk()),
                expected: ExpectedProperties {
                    branch_points: Vec::new(),
                    umbilic_points: UmbilicSet::Everywhere,
                    deck_invariant: false,
                    free_boundary: true,
                },
                params: Vec::new(),
            }
        }
        "cerezo" => {
            lookup_param(name, params, &[])?;
            let s = DirectChartSurface::cerezo()?;
            let branch_points = s.branch_points()?;
            let (a, b, err) = match &s.chart {
                DirectChart::Cerezo(m) => (m.a, m.b, m.boundary_error),
                _ => unreachable!(),
            };
            CatalogEntry {
                name,
                form: SurfaceForm::Direct(s),
                expected: ExpectedProperties {
                    branch_points,
                    umbilic_points: UmbilicSet::Everywhere,
                    deck_invariant: false,
                    free_boundary: true,
                },
                params: vec![
                    ("half_width".to_string(), CEREZO_HALF_WIDTH),
                    // the strip modulo 2π is the annulus A_{1/R,R} via w = e^{iz}
                    ("R".to_string(), CEREZO_HALF_WIDTH.exp()),
                    ("ellipse_a".to_string(), a),
                    ("ellipse_b".to_string(), b),
                    ("theodorsen_points".to_string(), THEODORSEN_POINTS as f64),
                    ("map_boundary_error".to_string(), err),
                ],
            }
        }
        _ => unreachable!(),
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_is_stable() {
        assert_eq!(
            catalog_list(),
            ["henneberg", "meeks", "catenoid", "critical_catenoid", "equatorial_disk", "cerezo"]
        );
    }

    #[test]
    fn unknown_names_and_params() {
        assert!(matches!(catalog_get("enneper", &[]), Err(Error::UnknownSurface(_))));
        assert!(matches!(
            catalog_get("catenoid", &[("scale", -1.0)]),
            Err(Error::ParamRange { .. })
        ));
        assert!(matches!(
            catalog_get("catenoid", &[("R", 0.5)]),
            Err(Error::ParamRange { .. })
        ));
        assert!(matches!(
            catalog_get("meeks", &[("R", 2.0)]),
            Err(Error::UnknownParam { .. })
        ));
    }

    #[test]
    fn defect_matches_closed_form() {
        for s in [0.3, 1.0, 1.7] {
            let d = catenoid_orthogonality_defect(s).unwrap();
            assert!((d - (s * s.tanh() - 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn critical_parameter() {
        let (s0, scale, r) = critical_catenoid_params(1e-13).unwrap();
        assert!((s0 * s0.tanh() - 1.0).abs() < 1e-12);
        assert!((scale - 1.0 / (s0.cosh().powi(2) + s0 * s0).sqrt()).abs() < 1e-13);
        assert!((r - s0.exp()).abs() < 1e-12);
    }

    #[test]
    fn meeks_umbilics() {
        let e = catalog_get("meeks", &[]).unwrap();
        let UmbilicSet::Isolated(mut u) = e.expected.umbilic_points else {
            panic!()
        };
        u.sort_by(|a, b| a.re.total_cmp(&b.re));
        let s5 = 5f64.sqrt();
        assert!((u[0] - C64::new((1.0 - s5) / 2.0, 0.0)).norm() < 1e-10);
        assert!((u[1] - C64::new((1.0 + s5) / 2.0, 0.0)).norm() < 1e-10);
        assert!(e.expected.branch_points.is_empty());
    }
}
