//! JSON report, schema version 1.
//!
//! Floats are written in scientific notation with 17 significant digits, so
//! every value round-trips exactly and repeated runs produce identical bytes.
//! Keys appear in declaration order.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use wlab_core::annulus::{AnnulusClass, HopfFitResult};
use wlab_core::catalog::ExpectedProperties;
use wlab_core::checks::CheckReport;
use wlab_core::moebius::ImpossibilityCertificate;
use wlab_core::steklov::SteklovSpectrum;
use wlab_core::vec3::Vec3;
use wlab_core::weierstrass::Domain;
use wlab_core::C64;

pub const REPORT_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    pub results: Vec<ReportItem>,
}

#[derive(Serialize)]
pub struct Param {
    pub name: String,
    pub value: f64,
}

#[derive(Serialize)]
pub struct CatalogList {
    pub surfaces: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct CatalogItem {
    pub name: &'static str,
    pub params: Vec<Param>,
    pub domain: Domain,
    /// `f`, `g` and the Hopf coefficient as text, for Weierstrass surfaces.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<WeierstrassText>,
    pub expected: ExpectedProperties,
}

#[derive(Serialize)]
pub struct WeierstrassText {
    pub f: String,
    pub g: String,
    pub hopf: String,
}

#[derive(Serialize)]
pub struct Evaluation {
    pub z: C64,
    pub position: Vec3,
    pub normal: Vec3,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conformal_factor: Option<f64>,
    pub hopf: C64,
    /// `symbolic` or `finite_difference`
    pub hopf_source: &'static str,
}

#[derive(Serialize)]
pub struct HopfSummary {
    pub chart: Domain,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<String>,
    /// Largest finite-difference `|φ|` over the grid, for surfaces without a
    /// closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_max_abs: Option<f64>,
}

#[derive(Serialize)]
pub struct FitItem {
    #[serde(flatten)]
    pub fit: HopfFitResult,
    pub class: AnnulusClass,
    pub tolerance: f64,
    pub chart: Domain,
}

#[derive(Serialize)]
pub struct LawIdentities {
    /// Largest floating point coefficient of the Gauss, `f` and Hopf law
    /// defects as rational functions.
    pub symbolic_residuals: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_identities: Option<[bool; 3]>,
}

#[derive(Serialize)]
pub struct SpectrumItem {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<&'static str>,
    /// `σ_1 · Length(∂Σ)`
    pub normalized_sigma1: f64,
    pub multiplicity1: usize,
    #[serde(flatten)]
    pub spectrum: SteklovSpectrum,
}

#[derive(Serialize)]
pub struct MeshItem {
    pub path: String,
    pub vertices: usize,
    pub faces: usize,
    pub dropped_faces: usize,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    Check(CheckReport),
    CatalogList(CatalogList),
    Catalog(CatalogItem),
    Evaluation(Evaluation),
    Hopf(HopfSummary),
    HopfFit(FitItem),
    LawIdentities(LawIdentities),
    Certificate(ImpossibilityCertificate),
    Spectrum(SpectrumItem),
    Mesh(MeshItem),
}

impl Report {
    pub fn new(surface: Option<String>) -> Self {
        Report {
            version: REPORT_VERSION,
            surface,
            results: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        self.results.push(item);
    }

    /// False when any check in the report failed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| match r {
            ReportItem::Check(c) => c.passed,
            _ => true,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, ExactFloats::default());
        self.serialize(&mut ser).expect("report types serialize infallibly");
        out.push(b'\n');
        String::from_utf8(out).expect("serde_json writes UTF-8")
    }
}

/// Write the report to `path`, or to standard output.
pub fn write_report(report: &Report, path: Option<&Path>) -> io::Result<()> {
    let json = report.to_json();
    match path {
        Some(p) => std::fs::write(p, json),
        None => io::stdout().lock().write_all(json.as_bytes()),
    }
}

/// Pretty printer whose floats keep all 17 significant digits.
#[derive(Default)]
struct ExactFloats(PrettyFormatter<'static>);

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = Report::new(None);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v, serde_json::json!({"version": 1, "results": []}));
    }

    #[test]
    fn floats_round_trip() {
        let mut r = Report::new(Some("x".into()));
        let x = 0.1 + 0.2;
        r.push(ReportItem::Check(CheckReport::from_residuals("c", 1e-8, [(C64::new(x, -x), x)])));
        let json = r.to_json();
        assert!(json.contains("3.0000000000000004e-1"), "{json}");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["results"][0]["max_residual"].as_f64(), Some(x));
        assert_eq!(v["results"][0]["passed"], serde_json::json!(false));
        assert_eq!(v["results"][0]["kind"], serde_json::json!("check"));
    }
}
