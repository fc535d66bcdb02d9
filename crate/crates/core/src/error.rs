use alloc::string::String;

use crate::C64;

/// Errors raised by the numerical and symbolic routines of this crate.
///
/// Check routines report failures through [`crate::checks::CheckReport`]
/// instead; these variants are reserved for precondition violations and
/// numerical breakdowns.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("denominator vanishes at z = {z} (pole)")]
    Pole { z: C64 },
    #[error("denominator of a rational function is identically zero")]
    ZeroDenominator,
    #[error("root finder did not converge: {0}")]
    Convergence(String),
    #[error("integration path passes within {distance:e} of a pole at {pole}")]
    PoleOnPath { pole: C64, distance: f64 },
    #[error("adaptive quadrature missed tolerance {tolerance:e} (estimate {estimate:e}) after {subdivisions} subdivisions")]
    Quadrature {
        tolerance: f64,
        estimate: f64,
        subdivisions: usize,
    },
    #[error("point {z} lies outside the domain: {reason}")]
    Domain { z: C64, reason: &'static str },
    #[error("pole cancellation failed: {0}")]
    Simplification(String),
    #[error("{z} is a branch point of the immersion")]
    BranchPoint { z: C64 },
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("surface `{surface}` takes no parameter `{name}`")]
    UnknownParam { surface: &'static str, name: String },
    #[error("parameter `{name}` = {value} outside {range}")]
    ParamRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("branch order fit is ambiguous: orders {best} and {runner_up} fit within a factor 2")]
    FitAmbiguous { best: u32, runner_up: u32 },
    #[error("mode cutoff {max_mode} cannot resolve {count} eigenvalues")]
    Truncation { max_mode: u32, count: usize },
    #[error("Moebius quotient needs equal boundary weights, got {0} and {1}")]
    WeightMismatch(f64, f64),
    #[error("index {index} out of range for a spectrum with {len} eigenvalues")]
    Index { index: usize, len: usize },
    #[error("the domain has no boundary to sample")]
    NoBoundary,
    #[error("invalid path: {0}")]
    InvalidPath(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
