//! Subcommand implementations. Each returns whether every check passed.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use wlab_core::annulus::{check_c0_form, classify_annulus, fit_c0};
use wlab_core::catalog::{catalog_get, catalog_list, CatalogEntry, SurfaceForm};
use wlab_core::checks::{
    check_free_boundary, check_hopf_at_branch_points, check_hopf_oracle, check_hopf_real_on_boundary,
    check_minimal_immersion, fd_hopf_oracle, polar_grid, rect_grid,
};
use wlab_core::moebius::{check_deck_invariance, deck_samples, impossibility_certificate, verify_laws};
use wlab_core::steklov::{
    disk_spectrum, moebius_spectrum, multiplicity_report, steklov_spectrum, CylinderGeometry, SteklovSpectrum,
};
use wlab_core::weierstrass::{Domain, DomainKind, Immersion, WeierstrassSurface};
use wlab_core::{Error, C64};

use crate::args::{Command, GridArgs, OutArgs, Quotient, Suite, SurfaceArgs, TolArgs};
use crate::mesh::{build_mesh, write_obj};
use crate::report::{
    CatalogItem, CatalogList, Evaluation, FitItem, HopfSummary, LawIdentities, MeshItem, Param, Report, ReportItem,
    SpectrumItem, WeierstrassText,
};
use crate::spectrum_csv::write_spectrum_csv;
use crate::CliError;

type CliResult<T> = Result<T, CliError>;

/// Relative inset keeping finite-difference stencils inside closed domains.
const INSET: f64 = 0.01;

/// Relative gap below which two eigenvalues count as one in `multiplicity1`.
const MULTIPLICITY_TOL: f64 = 1e-10;

pub fn execute(cmd: Command) -> CliResult<bool> {
    match cmd {
        Command::Catalog { surface, params, out } => catalog(surface, params, &out),
        Command::Eval { surface, z, out } => eval(&surface, &z, &out),
        Command::Check {
            surface,
            suite,
            grid,
            tol,
            out,
        } => check(&surface, suite, grid, tol, &out),
        Command::Hopf { surface, grid, tol, out } => hopf(&surface, grid, tol, &out),
        Command::FitC0 {
            surface,
            angles,
            grid,
            tol,
            out,
        } => fit(&surface, angles, grid, tol, &out),
        Command::MoebiusVerify {
            surface,
            samples,
            grid,
            tol,
            out,
        } => moebius_verify(&surface, samples, grid, tol, &out),
        Command::Impossibility { r, c0, out } => {
            let mut report = Report::new(None);
            report.push(ReportItem::Certificate(impossibility_certificate(r, c0)?));
            finish(report, &out)
        }
        Command::Steklov {
            l,
            r,
            disk,
            weights,
            max_mode,
            count,
            quotient,
            csv,
            out,
        } => steklov(l, r, disk, weights, max_mode, count, quotient, csv.as_deref(), &out),
        Command::Mesh {
            surface,
            obj,
            grid,
            tol,
            out,
        } => mesh(&surface, &obj, grid, tol, &out),
    }
}

fn finish(report: Report, out: &OutArgs) -> CliResult<bool> {
    crate::report::write_report(&report, out.out.as_deref())
        .map_err(|e| CliError::Io(format!("cannot write report: {e}")))?;
    Ok(report.passed())
}

fn load(name: &str, params: &[(String, f64)]) -> CliResult<CatalogEntry> {
    let p: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(catalog_get(name, &p)?)
}

fn load_surface(a: &SurfaceArgs) -> CliResult<CatalogEntry> {
    load(&a.surface, &a.params)
}

fn params_of(e: &CatalogEntry) -> Vec<Param> {
    e.params
        .iter()
        .map(|(name, value)| Param {
            name: name.clone(),
            value: *value,
        })
        .collect()
}

fn catalog(surface: Option<String>, params: Vec<(String, f64)>, out: &OutArgs) -> CliResult<bool> {
    let Some(name) = surface else {
        if !params.is_empty() {
            return Err(CliError::Usage("--param needs --surface".into()));
        }
        let mut report = Report::new(None);
        report.push(ReportItem::CatalogList(CatalogList {
            surfaces: catalog_list().to_vec(),
        }));
        return finish(report, out);
    };
    let e = load(&name, &params)?;
    let data = e.form.weierstrass().map(|s| WeierstrassText {
        f: s.f.to_string(),
        g: s.g.to_string(),
        hopf: s
            .hopf_coefficient()
            .as_symbolic()
            .map_or_else(String::new, |phi| phi.to_string()),
    });
    let mut report = Report::new(Some(e.name.to_string()));
    report.push(ReportItem::Catalog(CatalogItem {
        name: e.name,
        params: params_of(&e),
        domain: *e.form.immersion().domain(),
        data,
        expected: e.expected.clone(),
    }));
    finish(report, out)
}

fn eval(a: &SurfaceArgs, points: &[C64], out: &OutArgs) -> CliResult<bool> {
    let e = load_surface(a)?;
    let s = e.form.immersion();
    let mut report = Report::new(Some(e.name.to_string()));
    for &z in points {
        if !s.domain().contains(z) {
            return Err(CliError::Usage(format!("--z {z} lies outside the domain of {}", e.name)));
        }
        let on_branch = |err: Error| match err {
            Error::BranchPoint { z } => CliError::Usage(format!("--z {z} is a branch point of {}", e.name)),
            err => err.into(),
        };
        let (hopf, hopf_source) = match s.hopf() {
            Some(q) => (q.eval(z)?, "symbolic"),
            None => (fd_hopf_oracle(s, z, None).map_err(on_branch)?, "finite_difference"),
        };
        report.push(ReportItem::Evaluation(Evaluation {
            z,
            position: s.position(z)?,
            normal: s.normal(z).map_err(on_branch)?,
            conformal_factor: match e.form.weierstrass() {
                Some(w) => Some(w.conformal_factor(z)?),
                None => None,
            },
            hopf,
            hopf_source,
        }));
    }
    finish(report, out)
}

/// Surfaces on the punctured plane have no boundary; boundary checks and
/// fits run on the canonical annulus `A_{1/R,R}` with `R = --r-max`.
fn bounded(form: &SurfaceForm, grid: &GridArgs) -> CliResult<Option<WeierstrassSurface>> {
    match form {
        SurfaceForm::Weierstrass(s) if s.domain.kind == DomainKind::PuncturedPlane => {
            if !(grid.r_max > 1.0) {
                return Err(CliError::Usage(format!(
                    "--r-max {} must exceed 1 to cut an annulus out of the punctured plane",
                    grid.r_max
                )));
            }
            let mut d = Domain::canonical_annulus(grid.r_max)?;
            d.slit = s.domain.slit;
            Ok(Some(s.with_domain(d)?))
        }
        _ => Ok(None),
    }
}

fn avoid_points(s: &dyn Immersion, form: &SurfaceForm) -> CliResult<Vec<C64>> {
    let mut avoid: Vec<C64> = s.branch_points()?.iter().map(|b| b.point).collect();
    if let Some(w) = form.weierstrass() {
        avoid.extend_from_slice(w.poles());
    }
    Ok(avoid)
}

/// Interior grid of the surface's chart: the polar grid of the flags on the
/// punctured plane, otherwise a grid covering the chart minus a thin inset.
/// Points near branch points, poles and the slit are dropped.
fn interior_grid(s: &dyn Immersion, avoid: &[C64], grid: &GridArgs, clearance: f64) -> Vec<C64> {
    let d = s.domain();
    let offset = d.slit.unwrap_or(0.0);
    let pts = match d.kind {
        DomainKind::PuncturedPlane => polar_grid(grid.r_min, grid.r_max, grid.n_r, grid.n_theta, offset),
        DomainKind::CanonicalAnnulus { r } => {
            polar_grid((1.0 + INSET) / r, (1.0 - INSET) * r, grid.n_r, grid.n_theta, offset)
        }
        DomainKind::UnitDisk => polar_grid(0.1, 1.0 - INSET, grid.n_r, grid.n_theta, offset),
        DomainKind::Strip { half_width } => {
            let step = 2.0 * PI / grid.n_theta as f64;
            let v = (1.0 - INSET) * half_width;
            rect_grid((-PI + 0.5 * step, PI - 0.5 * step), (-v, v), grid.n_theta, grid.n_r)
        }
    };
    let slit_gap = |z: C64| match d.slit {
        Some(t) => {
            let a = (z.arg() - t).rem_euclid(2.0 * PI);
            a.min(2.0 * PI - a) * z.norm() >= 1e-2
        }
        None => true,
    };
    pts.into_iter()
        .filter(|&z| d.is_interior(z) && slit_gap(z) && avoid.iter().all(|p| (z - p).norm() >= clearance))
        .collect()
}

fn check(a: &SurfaceArgs, suite: Suite, grid: GridArgs, tol: TolArgs, out: &OutArgs) -> CliResult<bool> {
    grid.validate().map_err(CliError::Usage)?;
    let tol = tol.resolve().map_err(CliError::Usage)?;
    let e = load_surface(a)?;
    let s = e.form.immersion();
    let mut report = Report::new(Some(e.name.to_string()));
    if matches!(suite, Suite::Minimal | Suite::All) {
        let avoid = avoid_points(s, &e.form)?;
        let pts = interior_grid(s, &avoid, &grid, tol.clearance);
        report.push(ReportItem::Check(check_minimal_immersion(s, &pts, tol.minimal)?));
    }
    if suite != Suite::Minimal {
        let cut = bounded(&e.form, &grid)?;
        let b: &dyn Immersion = match &cut {
            Some(w) => w,
            None => s,
        };
        if matches!(suite, Suite::FreeBoundary | Suite::All) {
            report.push(ReportItem::Check(check_free_boundary(b, grid.n_theta, tol.free_boundary)?));
        }
        if matches!(suite, Suite::HopfBoundary | Suite::All) {
            report.push(ReportItem::Check(check_hopf_real_on_boundary(
                b,
                grid.n_theta,
                tol.hopf_boundary,
            )?));
        }
    }
    finish(report, out)
}

fn hopf(a: &SurfaceArgs, grid: GridArgs, tol: TolArgs, out: &OutArgs) -> CliResult<bool> {
    grid.validate().map_err(CliError::Usage)?;
    let tol = tol.resolve().map_err(CliError::Usage)?;
    let e = load_surface(a)?;
    let s = e.form.immersion();
    let avoid = avoid_points(s, &e.form)?;
    let pts = interior_grid(s, &avoid, &grid, tol.clearance);
    let mut report = Report::new(Some(e.name.to_string()));
    let chart = *s.domain();
    match s.hopf() {
        Some(q) => {
            report.push(ReportItem::Hopf(HopfSummary {
                chart,
                symbolic: q.as_symbolic().map(|phi| phi.to_string()),
                oracle_max_abs: None,
            }));
            report.push(ReportItem::Check(check_hopf_oracle(s, &q, &pts, tol.hopf_oracle)?));
        }
        None => {
            let mut max = 0.0f64;
            for &z in &pts {
                max = max.max(fd_hopf_oracle(s, z, None)?.norm());
            }
            report.push(ReportItem::Hopf(HopfSummary {
                chart,
                symbolic: None,
                oracle_max_abs: Some(max),
            }));
        }
    }
    report.push(ReportItem::Check(check_hopf_at_branch_points(s, tol.hopf_at_branch)?));
    finish(report, out)
}

fn fit(a: &SurfaceArgs, angles: usize, grid: GridArgs, tol: TolArgs, out: &OutArgs) -> CliResult<bool> {
    grid.validate().map_err(CliError::Usage)?;
    if angles < 2 {
        return Err(CliError::Usage("--angles must be at least 2".into()));
    }
    let tol = tol.resolve().map_err(CliError::Usage)?;
    let e = load_surface(a)?;
    let cut = bounded(&e.form, &grid)?;
    let s: &dyn Immersion = match &cut {
        Some(w) => w,
        None => e.form.immersion(),
    };
    let result = fit_c0(s, angles)?;
    let t = if result.symbolic_constant.is_some() {
        tol.fit_symbolic
    } else {
        tol.fit_sampled
    };
    let class = classify_annulus(s, &result, t)?;
    let mut report = Report::new(Some(e.name.to_string()));
    let form = check_c0_form(&result, t);
    report.push(ReportItem::HopfFit(FitItem {
        fit: result,
        class,
        tolerance: t,
        chart: *s.domain(),
    }));
    report.push(ReportItem::Check(form));
    finish(report, out)
}

fn moebius_verify(a: &SurfaceArgs, samples: usize, grid: GridArgs, tol: TolArgs, out: &OutArgs) -> CliResult<bool> {
    grid.validate().map_err(CliError::Usage)?;
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let tol = tol.resolve().map_err(CliError::Usage)?;
    let e = load_surface(a)?;
    let Some(s) = e.form.weierstrass() else {
        return Err(CliError::Usage(format!("{} has no Weierstrass data", e.name)));
    };
    if !(grid.r_max > 1.0) {
        return Err(CliError::Usage(format!("--r-max {} must exceed 1", grid.r_max)));
    }
    // keep away from every point where f, g, 1/g or the immersion degenerate
    let mut avoid = avoid_points(s, &e.form)?;
    avoid.extend(s.g.zeros()?.iter().map(|c| c.root));
    avoid.extend(s.g_inv().zeros()?.iter().map(|c| c.root));
    let pts = deck_samples(samples, grid.r_max, s.domain.slit, &avoid, tol.clearance)?;
    let laws = verify_laws(s, &pts, tol.laws)?;
    let mut report = Report::new(Some(e.name.to_string()));
    report.push(ReportItem::Check(check_deck_invariance(s, &pts, tol.deck)?));
    report.push(ReportItem::Check(laws.gauss));
    report.push(ReportItem::Check(laws.f));
    report.push(ReportItem::Check(laws.hopf));
    report.push(ReportItem::LawIdentities(LawIdentities {
        symbolic_residuals: laws.symbolic_residuals,
        exact_identities: laws.exact_identities,
    }));
    finish(report, out)
}

#[allow(clippy::too_many_arguments)]
fn steklov(
    l: Option<f64>,
    r: Option<f64>,
    disk: bool,
    weights: (f64, f64),
    max_mode: u32,
    count: usize,
    quotient: Option<Quotient>,
    csv: Option<&Path>,
    out: &OutArgs,
) -> CliResult<bool> {
    if count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let spectrum: SteklovSpectrum = if disk {
        if quotient.is_some() {
            return Err(CliError::Usage("--quotient applies to cylinders, not --disk".into()));
        }
        disk_spectrum(max_mode, count)?
    } else {
        let geom = match (l, r) {
            (Some(l), None) => CylinderGeometry::new(l, weights)?,
            (None, Some(r)) => CylinderGeometry::new(
                CylinderGeometry::from_annulus(r)?.half_length,
                weights,
            )?,
            _ => return Err(CliError::Usage("give exactly one of --L, --R and --disk".into())),
        };
        match quotient {
            Some(Quotient::Moebius) => moebius_spectrum(&geom, max_mode, count)?,
            None => steklov_spectrum(&geom, max_mode, count)?,
        }
    };
    let sigma1 = spectrum.sigma(1)?;
    let multiplicity1 = multiplicity_report(&spectrum, 1, MULTIPLICITY_TOL * sigma1.max(1.0))?;
    if let Some(path) = csv {
        let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write_spectrum_csv(&spectrum, BufWriter::new(file))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let mut report = Report::new(None);
    report.push(ReportItem::Spectrum(SpectrumItem {
        quotient: quotient.map(|_| "moebius"),
        normalized_sigma1: sigma1 * spectrum.boundary_length,
        multiplicity1,
        spectrum,
    }));
    finish(report, out)
}

fn mesh(a: &SurfaceArgs, obj: &Path, grid: GridArgs, tol: TolArgs, out: &OutArgs) -> CliResult<bool> {
    grid.validate().map_err(CliError::Usage)?;
    let tol = tol.resolve().map_err(CliError::Usage)?;
    let e = load_surface(a)?;
    let s = e.form.immersion();
    let d = s.domain();
    let offset = d.slit.unwrap_or(0.0);
    let pts = match d.kind {
        DomainKind::PuncturedPlane => polar_grid(grid.r_min, grid.r_max, grid.n_r, grid.n_theta, offset),
        DomainKind::CanonicalAnnulus { r } => polar_grid(1.0 / r, r, grid.n_r, grid.n_theta, offset),
        DomainKind::UnitDisk => polar_grid(grid.r_min.min(1.0) / grid.r_max.max(1.0), 1.0, grid.n_r, grid.n_theta, offset),
        DomainKind::Strip { half_width } => {
            let step = 2.0 * PI / grid.n_theta as f64;
            rect_grid(
                (-PI + 0.5 * step, PI - 0.5 * step),
                (-half_width, half_width),
                grid.n_theta,
                grid.n_r,
            )
        }
    };
    let avoid = avoid_points(s, &e.form)?;
    let m = build_mesh(s, &pts, grid.n_r, grid.n_theta, &avoid, tol.clearance)?;
    let file = File::create(obj).map_err(|e| CliError::Io(format!("{}: {e}", obj.display())))?;
    write_obj(&m, BufWriter::new(file)).map_err(|e| CliError::Io(format!("{}: {e}", obj.display())))?;
    let mut report = Report::new(Some(e.name.to_string()));
    report.push(ReportItem::Mesh(MeshItem {
        path: obj.display().to_string(),
        vertices: m.vertices.len(),
        faces: m.faces.len(),
        dropped_faces: m.dropped,
    }));
    finish(report, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_grid_respects_the_chart() {
        let e = catalog_get("equatorial_disk", &[]).unwrap();
        let g = GridArgs {
            r_min: 0.5,
            r_max: 2.0,
            n_r: 4,
            n_theta: 8,
        };
        let pts = interior_grid(e.form.immersion(), &[], &g, 0.1);
        assert_eq!(pts.len(), 32);
        assert!(pts.iter().all(|z| z.norm() < 1.0));
    }

    #[test]
    fn punctured_plane_is_cut_to_an_annulus() {
        let e = catalog_get("henneberg", &[]).unwrap();
        let g = GridArgs {
            r_min: 0.5,
            r_max: 3.0,
            n_r: 4,
            n_theta: 8,
        };
        let s = bounded(&e.form, &g).unwrap().unwrap();
        assert_eq!(s.domain.kind, DomainKind::CanonicalAnnulus { r: 3.0 });
        assert_eq!(s.domain.slit, e.form.immersion().domain().slit);
        let disk = catalog_get("equatorial_disk", &[]).unwrap();
        assert!(bounded(&disk.form, &g).unwrap().is_none());
    }
}
