//! Branched minimal immersions from Weierstrass data.
//!
//! A surface is given by a holomorphic `f` and a meromorphic `g` on a planar
//! chart, and
//!
//! ```text
//! X(z) = X(z0) + Re ∫ ( f(1 - g²)/2, i f(1 + g²)/2, f g ) dζ .
//! ```
//!
//! Everything is evaluated from the holomorphic triple `(f, fg, fg²)`, which
//! stays finite at the poles of `g`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::rational::{
    exact_ratio, Coeff, ExactRationalFunction, HermitianRational, Poly, RationalComplexFunction,
    RationalFunction, CLUSTER_TOL,
};
use crate::vec3::{self, CVec3, Vec3};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Minimum distance between an integration path and a pole of the data.
pub const PATH_CLEARANCE: f64 = 1e-3;

const BOUNDARY_SLACK: f64 = 1e-12;

/// Conformal type of a parameter domain.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum DomainKind {
    /// `1/R <= |z| <= R`
    CanonicalAnnulus { r: f64 },
    /// `C \ {0}`
    PuncturedPlane,
    /// `|Im z| <= half_width`, understood as periodic in `Re z` with period `2π`.
    Strip { half_width: f64 },
    /// `|z| <= 1`
    UnitDisk,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Domain {
    pub kind: DomainKind,
    /// Angle of the ray removed to make an annular chart simply connected,
    /// normalized to `[0, 2π)`.
    pub slit: Option<f64>,
}

/// Normalize an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta % TAU;
    let t = if t < 0.0 { t + TAU } else { t };
    // a tiny negative input rounds up to exactly 2π
    if t >= TAU {
        0.0
    } else {
        t
    }
}

impl Domain {
    pub fn canonical_annulus(r: f64) -> Result<Self> {
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::ParamRange {
                name: "R",
                value: r,
                range: "(1, inf)",
            });
        }
        Ok(Domain {
            kind: DomainKind::CanonicalAnnulus { r },
            slit: None,
        })
    }

    pub fn punctured_plane() -> Self {
        Domain {
            kind: DomainKind::PuncturedPlane,
            slit: None,
        }
    }

    pub fn strip(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::ParamRange {
                name: "half_width",
                value: half_width,
                range: "(0, inf)",
            });
        }
        Ok(Domain {
            kind: DomainKind::Strip { half_width },
            slit: None,
        })
    }

    pub fn unit_disk() -> Self {
        Domain {
            kind: DomainKind::UnitDisk,
            slit: None,
        }
    }

    pub fn with_slit(mut self, theta: f64) -> Self {
        self.slit = Some(normalize_angle(theta));
        self
    }

    /// Membership in the closed domain.
    pub fn contains(&self, z: C64) -> bool {
        let r = z.norm();
        match self.kind {
            DomainKind::CanonicalAnnulus { r: big } => {
                r >= (1.0 - BOUNDARY_SLACK) / big && r <= big * (1.0 + BOUNDARY_SLACK)
            }
            DomainKind::PuncturedPlane => r > 0.0 && r.is_finite(),
            DomainKind::Strip { half_width } => {
                z.im.abs() <= half_width * (1.0 + BOUNDARY_SLACK) && z.re.is_finite()
            }
            DomainKind::UnitDisk => r <= 1.0 + BOUNDARY_SLACK,
        }
    }

    pub fn check(&self, z: C64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::Domain {
                z,
                reason: "outside the closed parameter domain",
            })
        }
    }

    /// Whether the point lies strictly inside, i.e. not on a boundary curve.
    pub fn is_interior(&self, z: C64) -> bool {
        let r = z.norm();
        match self.kind {
            DomainKind::CanonicalAnnulus { r: big } => r > 1.0 / big && r < big,
            DomainKind::PuncturedPlane => r > 0.0 && r.is_finite(),
            DomainKind::Strip { half_width } => z.im.abs() < half_width,
            DomainKind::UnitDisk => r < 1.0,
        }
    }

    /// `n` points on each boundary curve together with the outward conormal
    /// direction in the parameter plane (unit complex number).
    pub fn boundary_samples(&self, n: usize) -> Result<Vec<(C64, C64)>> {
        let offset = self.slit.unwrap_or(0.0);
        let circle = |r: f64, outward: f64| {
            crate::sampling::circle_points(n, r, offset)
                .into_iter()
                .map(move |z| (z, z / z.norm() * outward))
        };
        match self.kind {
            DomainKind::CanonicalAnnulus { r } => {
                Ok(circle(1.0 / r, -1.0).chain(circle(r, 1.0)).collect())
            }
            DomainKind::UnitDisk => Ok(circle(1.0, 1.0).collect()),
            DomainKind::Strip { half_width } => {
                let step = TAU / n as f64;
                let mut out = Vec::with_capacity(2 * n);
                for (v, dir) in [(-half_width, -1.0), (half_width, 1.0)] {
                    for k in 0..n {
                        let u = -PI + (k as f64 + 0.5) * step;
                        out.push((C64::new(u, v), C64::new(0.0, dir)));
                    }
                }
                Ok(out)
            }
            DomainKind::PuncturedPlane => Err(Error::NoBoundary),
        }
    }
}

/// One piece of an integration contour.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: C64, to: C64 },
    /// Arc of the circle `|ζ| = radius` about the origin, starting at angle
    /// `start` and turning through the signed angle `sweep`.
    Arc { radius: f64, start: f64, sweep: f64 },
}

impl Segment {
    pub fn start_point(&self) -> C64 {
        match *self {
            Segment::Line { from, .. } => from,
            Segment::Arc { radius, start, .. } => C64::from_polar(radius, start),
        }
    }

    pub fn end_point(&self) -> C64 {
        match *self {
            Segment::Line { to, .. } => to,
            Segment::Arc { radius, start, sweep } => C64::from_polar(radius, start + sweep),
        }
    }

    /// Point and velocity at parameter `t ∈ [0, 1]`.
    pub fn at(&self, t: f64) -> (C64, C64) {
        match *self {
            Segment::Line { from, to } => (from + (to - from) * t, to - from),
            Segment::Arc { radius, start, sweep } => {
                let z = C64::from_polar(radius, start + sweep * t);
                (z, C64::new(0.0, sweep) * z)
            }
        }
    }

    /// Distance from the segment to the point `p`.
    pub fn distance_to(&self, p: C64) -> f64 {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let t = ((p - from) * d.conj()).re / d.norm_sqr();
                let t = t.clamp(0.0, 1.0);
                (from + d * t - p).norm()
            }
            Segment::Arc { radius, start, sweep } => {
                let (lo, hi) = if sweep >= 0.0 {
                    (start, start + sweep)
                } else {
                    (start + sweep, start)
                };
                let a = p.arg();
                let shifted = lo + normalize_angle(a - lo);
                if p.norm() > 0.0 && shifted <= hi {
                    (p.norm() - radius).abs()
                } else {
                    (self.start_point() - p).norm().min((self.end_point() - p).norm())
                }
            }
        }
    }
}

/// Piecewise contour made of line segments and circular arcs about 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PathInPlane {
    segments: Vec<Segment>,
}

impl PathInPlane {
    /// Build from consecutive segments; each must start where the previous
    /// one ended and have nonzero extent.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidPath("empty path"));
        }
        for s in &segments {
            if (s.end_point() - s.start_point()).norm() == 0.0
                && !matches!(s, Segment::Arc { sweep, .. } if *sweep != 0.0)
            {
                return Err(Error::InvalidPath("degenerate segment"));
            }
        }
        for w in segments.windows(2) {
            let gap = (w[0].end_point() - w[1].start_point()).norm();
            if gap > 1e-12 * w[0].end_point().norm().max(1.0) {
                return Err(Error::InvalidPath("segments are not contiguous"));
            }
        }
        Ok(PathInPlane { segments })
    }

    pub fn line(from: C64, to: C64) -> Result<Self> {
        Self::new(vec![Segment::Line { from, to }])
    }

    /// The positively oriented circle `|z| = r`, starting at angle `start`.
    pub fn circle(r: f64, start: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidPath("circle radius must be positive"));
        }
        Self::new(vec![Segment::Arc {
            radius: r,
            start,
            sweep: TAU,
        }])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn waypoints(&self) -> Vec<C64> {
        let mut out = vec![self.segments[0].start_point()];
        out.extend(self.segments.iter().map(Segment::end_point));
        out
    }

    pub fn start(&self) -> C64 {
        self.segments[0].start_point()
    }

    pub fn end(&self) -> C64 {
        self.segments[self.segments.len() - 1].end_point()
    }

    pub fn is_closed(&self) -> bool {
        (self.end() - self.start()).norm() <= 1e-12 * self.start().norm().max(1.0)
    }
}

/// A quadratic differential `φ(z) dz²` in a fixed chart.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadDiffRepr {
    Symbolic(RationalComplexFunction),
    Sampled(Vec<(C64, C64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadDiffForm {
    pub repr: QuadDiffRepr,
    pub chart: Domain,
}

impl QuadDiffForm {
    pub fn symbolic(phi: RationalComplexFunction, chart: Domain) -> Self {
        QuadDiffForm {
            repr: QuadDiffRepr::Symbolic(phi),
            chart,
        }
    }

    pub fn zero(chart: Domain) -> Self {
        Self::symbolic(RationalFunction::zero(), chart)
    }

    pub fn as_symbolic(&self) -> Option<&RationalComplexFunction> {
        match &self.repr {
            QuadDiffRepr::Symbolic(phi) => Some(phi),
            QuadDiffRepr::Sampled(_) => None,
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        match &self.repr {
            QuadDiffRepr::Symbolic(phi) => phi.is_zero(),
            QuadDiffRepr::Sampled(s) => s.iter().all(|(_, v)| *v == C64::new(0.0, 0.0)),
        }
    }

    /// Coefficient `φ(z)`. A sampled form only answers at its sample points.
    pub fn eval(&self, z: C64) -> Result<C64> {
        match &self.repr {
            QuadDiffRepr::Symbolic(phi) => phi.eval(z),
            QuadDiffRepr::Sampled(s) => s
                .iter()
                .find(|(p, _)| *p == z)
                .map(|(_, v)| *v)
                .ok_or(Error::Domain {
                    z,
                    reason: "not a sample point of this quadratic differential",
                }),
        }
    }
}

/// A point where the immersion fails to be regular.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BranchPoint {
    pub point: C64,
    /// `ν` in `X_z = A (z - p)^ν + …`
    pub order: u32,
}

/// Common interface of every surface the checkers understand.
///
/// Implemented by Weierstrass surfaces and by explicit harmonic charts.
pub trait Immersion {
    fn domain(&self) -> &Domain;

    fn position(&self, z: C64) -> Result<Vec3>;

    /// `X(z + dz) - X(z)`, computed without forming the difference of two
    /// large numbers when the implementation allows it.
    fn increment(&self, z: C64, dz: C64) -> Result<Vec3> {
        Ok(vec3::sub(self.position(z + dz)?, self.position(z)?))
    }

    /// `X_z = (X_u - i X_v) / 2`
    fn x_z(&self, z: C64) -> Result<CVec3>;

    /// Unit normal compatible with the orientation `X_u × X_v`.
    fn normal(&self, z: C64) -> Result<Vec3>;

    /// Hopf differential `⟨X_zz, N⟩ dz²`, when known in closed form.
    fn hopf(&self) -> Option<QuadDiffForm>;

    fn branch_points(&self) -> Result<Vec<BranchPoint>>;

    /// Differential applied to the tangent direction `v`: `2 Re(X_z v)`.
    fn differential(&self, z: C64, v: C64) -> Result<Vec3> {
        let xz = self.x_z(z)?;
        Ok(vec3::scale(2.0, vec3::re(vec3::cscale(v, xz))))
    }
}

/// Exact counterpart of the floating point data. The floating point `f`,
/// `fg`, `fg²` and Hopf coefficient are `scale` times these.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactData {
    pub f: ExactRationalFunction,
    pub g: ExactRationalFunction,
    pub fg: ExactRationalFunction,
    pub fg2: ExactRationalFunction,
    pub hopf: ExactRationalFunction,
    pub scale: f64,
}

/// Weierstrass data with its parameter domain and normalization.
#[derive(Clone, Debug)]
pub struct WeierstrassSurface {
    pub f: RationalComplexFunction,
    pub g: RationalComplexFunction,
    pub fg: RationalComplexFunction,
    pub fg2: RationalComplexFunction,
    pub domain: Domain,
    pub base_point: C64,
    pub base_value: Vec3,
    g_inv: RationalComplexFunction,
    hopf: RationalComplexFunction,
    exact: Option<ExactData>,
    poles: Vec<C64>,
    branch: Vec<BranchPoint>,
}

fn hopf_from_data<T: Coeff>(f: &RationalFunction<T>, g: &RationalFunction<T>) -> Result<RationalFunction<T>> {
    let half = T::one() / T::from_int(2);
    g.derivative()?.try_mul(f)?.scale(&-half).simplify()
}

impl WeierstrassSurface {
    /// Build from floating point data. Products are formed and simplified
    /// here; the triple must be free of poles inside the domain.
    pub fn new(
        f: RationalComplexFunction,
        g: RationalComplexFunction,
        domain: Domain,
        base_point: C64,
        base_value: Vec3,
    ) -> Result<Self> {
        let f = f.simplify()?;
        let g = g.simplify()?;
        let fg = f.try_mul(&g)?;
        let fg2 = fg.try_mul(&g)?;
        let hopf = hopf_from_data(&f, &g)?;
        Self::assemble(f, g, fg, fg2, hopf, None, domain, base_point, base_value)
    }

    /// Build from exact data; the floating point fields are `scale` times
    /// the exact ones (`g` is not scaled).
    pub fn from_exact(
        f: ExactRationalFunction,
        g: ExactRationalFunction,
        scale: f64,
        domain: Domain,
        base_point: C64,
        base_value: Vec3,
    ) -> Result<Self> {
        let f = f.simplify()?;
        let g = g.simplify()?;
        let fg = f.try_mul(&g)?;
        let fg2 = fg.try_mul(&g)?;
        let hopf = hopf_from_data(&f, &g)?;
        let s = C64::new(scale, 0.0);
        let exact = ExactData {
            f: f.clone(),
            g: g.clone(),
            fg: fg.clone(),
            fg2: fg2.clone(),
            hopf: hopf.clone(),
            scale,
        };
        Self::assemble(
            f.to_c64().scale(&s),
            g.to_c64(),
            fg.to_c64().scale(&s),
            fg2.to_c64().scale(&s),
            hopf.to_c64().scale(&s),
            Some(exact),
            domain,
            base_point,
            base_value,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        f: RationalComplexFunction,
        g: RationalComplexFunction,
        fg: RationalComplexFunction,
        fg2: RationalComplexFunction,
        hopf: RationalComplexFunction,
        exact: Option<ExactData>,
        domain: Domain,
        base_point: C64,
        base_value: Vec3,
    ) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Simplification("f vanishes identically".into()));
        }
        if g.is_zero() {
            return Err(Error::Simplification("g vanishes identically".into()));
        }
        let g_inv = g.recip()?;
        let mut poles: Vec<C64> = Vec::new();
        for r in [&f, &fg, &fg2] {
            for p in r.poles()? {
                if !poles.iter().any(|q| (q - p.root).norm() <= CLUSTER_TOL) {
                    poles.push(p.root);
                }
            }
        }
        for &p in &poles {
            if domain.contains(p) {
                return Err(Error::Domain {
                    z: p,
                    reason: "Weierstrass data has a pole inside the domain",
                });
            }
        }
        domain.check(base_point)?;
        let mut s = WeierstrassSurface {
            f,
            g,
            fg,
            fg2,
            domain,
            base_point,
            base_value,
            g_inv,
            hopf,
            exact,
            poles,
            branch: Vec::new(),
        };
        s.branch = s.locate_branch_points()?;
        Ok(s)
    }

    /// Same data on a different domain, e.g. a canonical annulus cut out of
    /// a surface given on the punctured plane.
    pub fn with_domain(&self, domain: Domain) -> Result<Self> {
        let mut s = self.clone();
        s.domain = domain;
        for &p in &s.poles {
            if domain.contains(p) {
                return Err(Error::Domain {
                    z: p,
                    reason: "Weierstrass data has a pole inside the domain",
                });
            }
        }
        domain.check(s.base_point)?;
        s.branch = s.locate_branch_points()?;
        Ok(s)
    }

    pub fn exact(&self) -> Option<&ExactData> {
        self.exact.as_ref()
    }

    /// Poles of the holomorphic triple in the whole plane.
    pub fn poles(&self) -> &[C64] {
        &self.poles
    }

    /// `1/g`, used near the poles of `g`.
    pub fn g_inv(&self) -> &RationalComplexFunction {
        &self.g_inv
    }

    /// Integrand `Φ = (½(f − fg²), (i/2)(f + fg²), fg)`; `X_z = Φ/2`.
    pub fn phi(&self, z: C64) -> Result<CVec3> {
        let f = self.f.eval(z)?;
        let fg = self.fg.eval(z)?;
        let fg2 = self.fg2.eval(z)?;
        let half = C64::new(0.5, 0.0);
        Ok([half * (f - fg2), C64::new(0.0, 0.5) * (f + fg2), fg])
    }

    fn check_clearance(&self, seg: &Segment) -> Result<()> {
        for &p in &self.poles {
            let d = seg.distance_to(p);
            if d < PATH_CLEARANCE {
                return Err(Error::PoleOnPath { pole: p, distance: d });
            }
        }
        Ok(())
    }

    fn integrate_segment(&self, seg: &Segment) -> Result<CVec3> {
        self.check_clearance(seg)?;
        quadrature::integrate(|t| {
            let (z, dz) = seg.at(t);
            Ok(vec3::cscale(dz, self.phi(z)?))
        })
    }

    /// `∫ Φ dζ` along a path, before taking the real part.
    pub fn integrate_path(&self, path: &PathInPlane) -> Result<CVec3> {
        let mut acc = [C64::new(0.0, 0.0); 3];
        for seg in path.segments() {
            acc = vec3::cadd(acc, self.integrate_segment(seg)?);
        }
        Ok(acc)
    }

    /// Default contour from the base point to `z`.
    ///
    /// On annular charts: radial segment from the base point to the circle
    /// `|ζ| = |z|`, then an arc that does not cross the slit (or the shorter
    /// arc when there is none). On the strip and the disk: a straight line.
    pub fn default_path(&self, z: C64) -> Result<PathInPlane> {
        let z0 = self.base_point;
        if (z - z0).norm() == 0.0 {
            return Err(Error::InvalidPath("endpoint equals the base point"));
        }
        match self.domain.kind {
            DomainKind::Strip { .. } | DomainKind::UnitDisk => PathInPlane::line(z0, z),
            DomainKind::CanonicalAnnulus { .. } | DomainKind::PuncturedPlane => {
                let a0 = z0.arg();
                let a1 = z.arg();
                let sweep = match self.domain.slit {
                    Some(s) => normalize_angle(a1 - s) - normalize_angle(a0 - s),
                    None => {
                        let d = normalize_angle(a1 - a0);
                        if d > PI {
                            d - TAU
                        } else {
                            d
                        }
                    }
                };
                let mut segs = Vec::new();
                let r = z.norm();
                let corner = C64::from_polar(r, a0);
                if (corner - z0).norm() > 0.0 {
                    segs.push(Segment::Line { from: z0, to: corner });
                }
                if sweep != 0.0 {
                    segs.push(Segment::Arc {
                        radius: r,
                        start: a0,
                        sweep,
                    });
                }
                PathInPlane::new(segs)
            }
        }
    }

    /// `X(z)` by adaptive quadrature along `path`, or along the default
    /// contour when `path` is `None`.
    pub fn immerse(&self, z: C64, path: Option<&PathInPlane>) -> Result<Vec3> {
        self.domain.check(z)?;
        if (z - self.base_point).norm() == 0.0 && path.is_none() {
            return Ok(self.base_value);
        }
        let owned;
        let path = match path {
            Some(p) => {
                if (p.start() - self.base_point).norm() > 1e-12 || (p.end() - z).norm() > 1e-12 {
                    return Err(Error::InvalidPath("path must run from the base point to z"));
                }
                p
            }
            None => {
                owned = self.default_path(z)?;
                &owned
            }
        };
        let integral = self.integrate_path(path)?;
        Ok(vec3::add(self.base_value, vec3::re(integral)))
    }

    /// Real part of the loop integral of `Φ`.
    pub fn period_residual(&self, closed: &PathInPlane) -> Result<Vec3> {
        if !closed.is_closed() {
            return Err(Error::InvalidPath("period loop must be closed"));
        }
        Ok(vec3::re(self.integrate_path(closed)?))
    }

    /// `λ²` with `X*ds² = λ² |dz|²`:
    /// `¼(1+|g|²)²|f|² = ¼(|f|² + 2|fg|² + |fg²|²)`.
    pub fn conformal_factor(&self, z: C64) -> Result<f64> {
        self.domain.check(z)?;
        let f = self.f.eval(z)?;
        let fg = self.fg.eval(z)?;
        let fg2 = self.fg2.eval(z)?;
        Ok(0.25 * (f.norm_sqr() + 2.0 * fg.norm_sqr() + fg2.norm_sqr()))
    }

    /// The conformal factor as a rational function of `z` and `z̄`.
    pub fn conformal_factor_symbolic(&self) -> HermitianRational<C64> {
        quarter_sum(&self.f, &self.fg, &self.fg2, C64::new(0.25, 0.0))
    }

    /// Exact conformal factor of the unscaled exact data.
    pub fn conformal_factor_exact(&self) -> Option<HermitianRational<crate::rational::ExactComplex>> {
        self.exact
            .as_ref()
            .map(|e| quarter_sum(&e.f, &e.fg, &e.fg2, exact_ratio(1, 4, 0, 1)))
    }

    /// Inverse stereographic image of `g(z)`; the north pole at poles of `g`.
    pub fn gauss_map(&self, z: C64) -> Vec3 {
        match self.g.eval(z) {
            Ok(g) if g.norm() <= 1.0 => {
                let n = g.norm_sqr();
                vec3::scale(1.0 / (n + 1.0), [2.0 * g.re, 2.0 * g.im, n - 1.0])
            }
            _ => match self.g_inv.eval(z) {
                Ok(w) => {
                    let n = w.norm_sqr();
                    vec3::scale(1.0 / (1.0 + n), [2.0 * w.re, -2.0 * w.im, 1.0 - n])
                }
                Err(_) => [0.0, 0.0, 1.0],
            },
        }
    }

    /// `−g′f/2 dz²`
    pub fn hopf_coefficient(&self) -> QuadDiffForm {
        QuadDiffForm::symbolic(self.hopf.clone(), self.domain)
    }

    /// Simultaneous zeros of `f` and `fg²` in the closed domain, with
    /// order `min(ord f, ord fg²)`.
    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch
    }

    fn locate_branch_points(&self) -> Result<Vec<BranchPoint>> {
        let fz = self.f.zeros()?;
        let hz = self.fg2.zeros()?;
        let mut out = Vec::new();
        for a in &fz {
            if let Some(b) = hz
                .iter()
                .find(|b| (b.root - a.root).norm() <= CLUSTER_TOL * a.root.norm().max(1.0))
            {
                if self.domain.contains(a.root) {
                    out.push(BranchPoint {
                        point: a.root,
                        order: a.multiplicity.min(b.multiplicity),
                    });
                }
            }
        }
        Ok(out)
    }

    /// `II(v, w) = 2 Re{φ(z) (v₁ + i v₂)(w₁ + i w₂)}`
    pub fn second_fundamental_form(&self, z: C64, v: [f64; 2], w: [f64; 2]) -> Result<f64> {
        if self
            .branch
            .iter()
            .any(|b| (b.point - z).norm() <= 1e-9 * b.point.norm().max(1.0))
        {
            return Err(Error::BranchPoint { z });
        }
        let phi = self.hopf.eval(z)?;
        let v = C64::new(v[0], v[1]);
        let w = C64::new(w[0], w[1]);
        Ok(2.0 * (phi * v * w).re)
    }
}

fn quarter_sum<T: Coeff>(
    f: &RationalFunction<T>,
    fg: &RationalFunction<T>,
    fg2: &RationalFunction<T>,
    quarter: T,
) -> HermitianRational<T> {
    let a = HermitianRational::abs_sq(f);
    let b = HermitianRational::abs_sq(fg).scale(&T::from_int(2));
    let c = HermitianRational::abs_sq(fg2);
    a.add(&b).add(&c).scale(&quarter)
}

impl Immersion for WeierstrassSurface {
    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn position(&self, z: C64) -> Result<Vec3> {
        self.immerse(z, None)
    }

    /// Straight-segment integral from `z` to `z + dz`: accurate to roundoff
    /// relative to the increment itself.
    fn increment(&self, z: C64, dz: C64) -> Result<Vec3> {
        let seg = Segment::Line { from: z, to: z + dz };
        Ok(vec3::re(self.integrate_segment(&seg)?))
    }

    fn x_z(&self, z: C64) -> Result<CVec3> {
        Ok(vec3::cscale(C64::new(0.5, 0.0), self.phi(z)?))
    }

    fn normal(&self, z: C64) -> Result<Vec3> {
        Ok(self.gauss_map(z))
    }

    fn hopf(&self) -> Option<QuadDiffForm> {
        Some(self.hopf_coefficient())
    }

    fn branch_points(&self) -> Result<Vec<BranchPoint>> {
        Ok(self.branch.clone())
    }
}

/// Polynomial with small integer real coefficients, constant term first.
pub fn int_poly(coeffs: &[i64]) -> Poly<crate::rational::ExactComplex> {
    Poly::new(coeffs.iter().map(|&c| crate::rational::exact(c, 0)).collect())
}
