//! Catalog surfaces against closed forms and independent oracles.

use wlab_core::annulus::{classify_annulus, fit_c0, AnnulusClass, FIT_ANGLES};
use wlab_core::catalog::{catalog_get, catenoid, CatalogEntry, UmbilicSet};
use wlab_core::checks::{
    branch_expansion, check_free_boundary, check_hopf_at_branch_points, check_hopf_oracle,
    check_hopf_real_on_boundary, check_minimal_immersion, limit_normal_deviation, Tolerances,
};
use wlab_core::moebius::{check_deck_invariance, deck_samples, verify_laws};
use wlab_core::rational::{exact, poly_roots, ExactComplex, HermitianRational, Poly, Poly2};
use wlab_core::sampling::{annulus_points, with_clearance};
use wlab_core::vec3;
use wlab_core::weierstrass::{int_poly, Immersion, PathInPlane, WeierstrassSurface};
use wlab_core::C64;

fn entry(name: &str) -> CatalogEntry {
    catalog_get(name, &[]).unwrap()
}

fn ws(e: &CatalogEntry) -> &WeierstrassSurface {
    e.form.weierstrass().unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn meeks_closed_form(z: C64) -> [f64; 3] {
    let i = c(0.0, 1.0);
    let zi = z.inv();
    let x1 = -i / 3.0 * (z + zi).powu(3) - i * (z * z - zi * zi);
    let x2 = -(z.powu(3) - zi.powu(3)) / 3.0 - (z - zi).powu(2) - (z - zi);
    // antiderivative of fg = 2i(1 - z⁻²); the denominator is z, not z²
    let x3 = 2.0 * i * (1.0 + z * z) / z;
    [x1.re, x2.re, x3.re]
}

fn henneberg_closed_form(z: C64) -> [f64; 3] {
    let i = c(0.0, 1.0);
    let z2 = z * z;
    let x1 = (1.0 - z2).powu(3) / (6.0 * z.powu(3));
    let x2 = i * (1.0 + z2).powu(3) / (6.0 * z.powu(3));
    let x3 = (1.0 - z2).powu(2) / (2.0 * z2);
    [x1.re, x2.re, x3.re]
}

/// Sample points of `A_{1/2,2}` away from the slit, poles and branch points.
fn moebius_points(s: &WeierstrassSurface, n: usize) -> Vec<C64> {
    let mut avoid: Vec<C64> = s.poles().to_vec();
    avoid.extend(s.branch_points().iter().map(|b| b.point));
    deck_samples(n, 2.0, s.domain.slit, &avoid, 0.1).unwrap()
}

#[test]
fn meeks_matches_closed_form() {
    let e = entry("meeks");
    let s = ws(&e);
    for z in moebius_points(s, 40) {
        let d = vec3::dist(s.position(z).unwrap(), meeks_closed_form(z));
        assert!(d < 1e-10, "{z}: {d}");
    }
}

#[test]
fn henneberg_matches_closed_form() {
    let e = entry("henneberg");
    let s = ws(&e);
    for z in moebius_points(s, 40) {
        let d = vec3::dist(s.position(z).unwrap(), henneberg_closed_form(z));
        assert!(d < 1e-10, "{z}: {d}");
    }
}

// (1 + z w)² (z⁴ - 1)(w⁴ - 1) / (4 z⁴ w⁴)
fn henneberg_metric() -> HermitianRational<ExactComplex> {
    let one_plus = Poly2::constant(exact(1, 0)).add(&Poly2::from_z(&int_poly(&[0, 1])).mul(&Poly2::from_w(&int_poly(&[0, 1]))));
    let z4m1 = Poly2::abs_sq(&int_poly(&[-1, 0, 0, 0, 1]));
    let den = Poly2::abs_sq(&int_poly(&[0, 0, 0, 0, 1])).scale(&exact(4, 0));
    HermitianRational::new(one_plus.pow(2).mul(&z4m1), den)
}

// (|z - 1|² + |z|⁴ |z + 1|²)² / |z|⁸
fn meeks_metric() -> HermitianRational<ExactComplex> {
    let a = Poly2::abs_sq(&int_poly(&[-1, 1]));
    let b = Poly2::abs_sq(&int_poly(&[0, 0, 1])).mul(&Poly2::abs_sq(&int_poly(&[1, 1])));
    HermitianRational::new(a.add(&b).pow(2), Poly2::abs_sq(&int_poly(&[0, 0, 0, 0, 1])))
}

#[test]
fn conformal_factors_are_exact_identities() {
    let h = entry("henneberg");
    let got = ws(&h).conformal_factor_exact().unwrap();
    assert_eq!(got.identity_residual(&henneberg_metric()), 0.0);
    let m = entry("meeks");
    let got = ws(&m).conformal_factor_exact().unwrap();
    assert_eq!(got.identity_residual(&meeks_metric()), 0.0);
    // the floating point factor agrees pointwise
    for z in [c(0.7, 0.2), c(-1.3, 0.9), c(0.1, -0.6)] {
        let want = meeks_metric().eval(z).re;
        assert!((ws(&m).conformal_factor(z).unwrap() - want).abs() < 1e-12 * want);
    }
}

#[test]
fn hopf_coefficients_are_exact_identities() {
    let h = entry("henneberg");
    // -(z⁴ - 1) / (2 z⁴)
    let want = wlab_core::rational::ExactRationalFunction::new(int_poly(&[1, 0, 0, 0, -1]), int_poly(&[0, 0, 0, 0, 2])).unwrap();
    let got = &ws(&h).exact().unwrap().hopf;
    assert_eq!(got.identity_residual(&want), 0.0);
    let m = entry("meeks");
    // -2i (z² - z - 1) / z³
    let num = Poly::new(vec![exact(0, 2), exact(0, 2), exact(0, -2)]);
    let want = wlab_core::rational::ExactRationalFunction::new(num, int_poly(&[0, 0, 0, 1])).unwrap();
    let got = &ws(&m).exact().unwrap().hopf;
    assert_eq!(got.identity_residual(&want), 0.0);
}

#[test]
fn henneberg_branch_set() {
    let h = entry("henneberg");
    let mut pts: Vec<C64> = h.expected.branch_points.iter().map(|b| b.point).collect();
    assert_eq!(pts.len(), 4);
    for want in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
        let k = pts.iter().position(|p| (p - want).norm() < 1e-10).expect("branch point");
        pts.remove(k);
    }
    // branch points are the common zeros of f and fg²
    let roots = poly_roots(ws(&h).f.numerator(), 1e-8).unwrap();
    assert_eq!(roots.len(), 4);
    assert!(h.expected.branch_points.iter().all(|b| b.order == 1));
}

#[test]
fn meeks_has_no_branch_points_and_one_umbilic_pair() {
    let m = entry("meeks");
    assert!(m.expected.branch_points.is_empty());
    let UmbilicSet::Isolated(u) = &m.expected.umbilic_points else {
        panic!("isolated umbilics expected")
    };
    assert_eq!(u.len(), 2);
    // the pair is swapped by the deck map, so it is one point downstairs
    let t = wlab_core::moebius::deck(u[0]).unwrap();
    assert!((t - u[1]).norm() < 1e-10);
}

#[test]
fn hopf_oracle_agrees() {
    let tol = Tolerances::default();
    for name in ["henneberg", "meeks"] {
        let e = entry(name);
        let s = ws(&e);
        let mut avoid: Vec<C64> = s.poles().to_vec();
        avoid.extend(s.branch_points().iter().map(|b| b.point));
        let pts = with_clearance(annulus_points(80, 0.5, 2.0), &avoid, tol.clearance);
        let pts: Vec<C64> = pts.into_iter().take(50).collect();
        assert_eq!(pts.len(), 50);
        let r = check_hopf_oracle(s, &s.hopf_coefficient(), &pts, tol.hopf_oracle).unwrap();
        assert!(r.passed, "{name}: {r:?}");
    }
}

#[test]
fn minimality_on_every_catalog_surface() {
    for name in ["henneberg", "meeks", "catenoid", "critical_catenoid", "equatorial_disk"] {
        let e = entry(name);
        let s = e.form.immersion();
        let avoid: Vec<C64> = s.branch_points().unwrap().iter().map(|b| b.point).collect();
        let pts: Vec<C64> = match name {
            "equatorial_disk" => annulus_points(30, 0.1, 0.9),
            _ => annulus_points(30, 0.6, 1.6),
        };
        let pts = with_clearance(pts, &avoid, 0.1);
        let r = check_minimal_immersion(s, &pts, Tolerances::default().minimal).unwrap();
        assert!(r.passed, "{name}: {r:?}");
    }
}

#[test]
fn deck_invariance() {
    for name in ["henneberg", "meeks"] {
        let e = entry(name);
        let s = ws(&e);
        let r = check_deck_invariance(s, &moebius_points(s, 100), 1e-8).unwrap();
        assert!(r.passed, "{name}: {r:?}");
    }
    let cat = catenoid(1.0, 2.0).unwrap();
    let pts = deck_samples(100, 2.0, None, &[], 0.1).unwrap();
    let r = check_deck_invariance(&cat, &pts, 1e-8).unwrap();
    assert!(!r.passed && r.max_residual > 0.1, "{r:?}");
}

#[test]
fn transformation_laws() {
    for name in ["henneberg", "meeks"] {
        let e = entry(name);
        let s = ws(&e);
        let r = verify_laws(s, &moebius_points(s, 100), 1e-12).unwrap();
        assert!(r.passed(), "{name}: {r:?}");
        assert_eq!(r.exact_identities, Some([true, true, true]));
    }
    let cat = catenoid(1.0, 2.0).unwrap();
    let pts = deck_samples(100, 2.0, None, &[], 0.1).unwrap();
    let r = verify_laws(&cat, &pts, 1e-12).unwrap();
    assert!(r.gauss.passed);
    assert!(!r.f.passed);
    assert_eq!(r.exact_identities.map(|e| e[0..2].to_vec()), Some(vec![true, false]));
}

#[test]
fn free_boundary_surfaces() {
    let tol = Tolerances::default();
    for name in ["critical_catenoid", "equatorial_disk", "cerezo"] {
        let e = entry(name);
        let s = e.form.immersion();
        let fb = check_free_boundary(s, 64, tol.free_boundary).unwrap();
        assert!(fb.passed, "{name}: {fb:?}");
        let hr = check_hopf_real_on_boundary(s, 64, tol.hopf_boundary).unwrap();
        assert!(hr.passed, "{name}: {hr:?}");
    }
    let cat = catenoid(1.0, 2.0).unwrap();
    assert!(!check_free_boundary(&cat, 64, tol.free_boundary).unwrap().passed);
}

#[test]
fn hopf_fits() {
    let crit = entry("critical_catenoid");
    let fit = fit_c0(crit.form.immersion(), FIT_ANGLES).unwrap();
    assert_eq!(fit.residual, 0.0);
    assert_eq!(fit.c0.im, 0.0);
    assert_eq!(fit.symbolic_constant, Some(true));
    // φ = -g'f/2 = -c/(2z²)
    let scale = crit.params.iter().find(|(k, _)| k == "scale").unwrap().1;
    assert!((fit.c0.re + 0.5 * scale).abs() < 1e-15);
    assert_eq!(
        classify_annulus(crit.form.immersion(), &fit, 1e-10).unwrap(),
        AnnulusClass::RegularFreeOfUmbilics
    );

    let disk = entry("equatorial_disk");
    let fit = fit_c0(disk.form.immersion(), FIT_ANGLES).unwrap();
    assert_eq!(fit.c0, c(0.0, 0.0));
    assert_eq!(
        classify_annulus(disk.form.immersion(), &fit, 1e-10).unwrap(),
        AnnulusClass::TotallyGeodesic
    );

    for name in ["henneberg", "meeks"] {
        let e = entry(name);
        let s = ws(&e).with_domain(wlab_core::weierstrass::Domain::canonical_annulus(2.0).unwrap()).unwrap();
        let fit = fit_c0(&s, FIT_ANGLES).unwrap();
        assert!(fit.residual > 0.1, "{name}: {fit:?}");
        assert_eq!(fit.symbolic_constant, Some(false));
        assert_eq!(classify_annulus(&s, &fit, 1e-10).unwrap(), AnnulusClass::NotFreeBoundaryForm);
    }

    // the Cerezo strip has no closed form; the sampled fit sees a vanishing
    // Hopf differential
    let cz = entry("cerezo");
    let fit = fit_c0(cz.form.immersion(), 16).unwrap();
    assert!(fit.c0.norm() < 1e-6 && fit.residual < 1e-6, "{fit:?}");
}

#[test]
fn henneberg_branch_expansion() {
    let h = entry("henneberg");
    let s = ws(&h);
    let e = branch_expansion(s, c(1.0, 0.0), 1e-2).unwrap();
    assert_eq!(e.order, 1);
    assert!(e.relative_isotropy() <= 1e-6, "{e:?}");
    let dev = limit_normal_deviation(s, &e, 8, 1e-6).unwrap();
    assert!(dev <= 1e-4, "{dev}");
    let r = check_hopf_at_branch_points(s, 1e-10).unwrap();
    assert_eq!(r.samples, 4);
    assert!(r.passed, "{r:?}");
}

#[test]
fn cerezo_branch_points() {
    let cz = entry("cerezo");
    let s = cz.form.immersion();
    for b in s.branch_points().unwrap() {
        let e = branch_expansion(s, b.point, 1e-2).unwrap();
        assert_eq!(e.order, b.order);
    }
}

#[test]
fn catenoid_period_vanishes() {
    let cat = catenoid(1.0, 2.0).unwrap();
    let loop_ = PathInPlane::circle(1.3, 0.2).unwrap();
    let p = cat.period_residual(&loop_).unwrap();
    assert!(vec3::norm(p) < 1e-12, "{p:?}");
}
