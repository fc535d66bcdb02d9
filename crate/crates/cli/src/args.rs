//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wlab_core::checks::Tolerances;
use wlab_core::C64;

#[derive(Parser, Debug)]
#[command(name = "wlab", version, about = "Branched minimal surfaces, free boundary checks and Steklov spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog, or describe one surface.
    Catalog {
        #[arg(long)]
        surface: Option<String>,
        #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Position, normal, conformal factor and Hopf coefficient at points.
    Eval {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Parameter point, e.g. `0.5,1.2`, `1.5-0.3i` or `2`.
        #[arg(long, required = true, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Vec<C64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimality, free boundary and Hopf reality checks.
    Check {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form Hopf coefficient against the finite-difference oracle.
    Hopf {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fit the Hopf differential to `C0/z² dz²` and classify the annulus.
    FitC0 {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Samples per fitting circle.
        #[arg(long, default_value_t = wlab_core::annulus::FIT_ANGLES)]
        angles: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Deck invariance and the three transformation laws.
    MoebiusVerify {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certificate that a free boundary Möbius band forces `C0 = 0`.
    Impossibility {
        #[arg(long = "R")]
        r: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        c0: C64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Steklov spectrum of a flat cylinder, its Möbius quotient, or the disk.
    Steklov {
        /// Half length of the cylinder `[-L, L] × S¹`.
        #[arg(long = "L", conflicts_with_all = ["r", "disk"])]
        l: Option<f64>,
        /// Annulus parameter; the cylinder has `L = log R`.
        #[arg(long = "R", conflicts_with = "disk")]
        r: Option<f64>,
        #[arg(long)]
        disk: bool,
        /// Boundary weights of the circles `s = -L` and `s = L`.
        #[arg(long, value_name = "RHO1,RHO2", allow_hyphen_values = true, value_parser = parse_pair, default_value = "1,1")]
        weights: (f64, f64),
        #[arg(long, default_value_t = 64)]
        max_mode: u32,
        /// Eigenvalues to keep, counted with multiplicity.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, value_enum)]
        quotient: Option<Quotient>,
        /// Also write the spectrum as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Export a triangle mesh of the surface over the grid.
    Mesh {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        obj: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Minimal,
    FreeBoundary,
    HopfBoundary,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quotient {
    Moebius,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub surface: String,
    /// Catalog parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub r_min: f64,
    /// Also the annulus parameter `R` when a surface on the punctured
    /// plane is restricted to `A_{1/R,R}` for boundary checks.
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub r_max: f64,
    #[arg(long, default_value_t = 8)]
    pub n_r: usize,
    #[arg(long, default_value_t = 32)]
    pub n_theta: usize,
}

impl GridArgs {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_r < 2 || self.n_theta < 2 {
            return Err("--n-r and --n-theta must be at least 2".into());
        }
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(format!("--r-min {} and --r-max {} need 0 < r-min < r-max", self.r_min, self.r_max));
        }
        Ok(())
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TolArgs {
    /// Tolerance for every check of the command.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_minimal: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_free_boundary: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_hopf_boundary: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_deck: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_laws: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_hopf_oracle: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_fit: Option<f64>,
    /// Distance kept from branch points and poles.
    #[arg(long, allow_hyphen_values = true)]
    pub clearance: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, String> {
        let all = [
            ("--tol", self.tol),
            ("--tol-minimal", self.tol_minimal),
            ("--tol-free-boundary", self.tol_free_boundary),
            ("--tol-hopf-boundary", self.tol_hopf_boundary),
            ("--tol-deck", self.tol_deck),
            ("--tol-laws", self.tol_laws),
            ("--tol-hopf-oracle", self.tol_hopf_oracle),
            ("--tol-fit", self.tol_fit),
            ("--clearance", self.clearance),
        ];
        for (flag, v) in all {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(format!("{flag} must be positive, got {v}"));
                }
            }
        }
        let mut t = Tolerances::default();
        if let Some(v) = self.tol {
            t.minimal = v;
            t.free_boundary = v;
            t.hopf_boundary = v;
            t.deck = v;
            t.laws = v;
            t.hopf_oracle = v;
            t.hopf_at_branch = v;
            t.fit_symbolic = v;
            t.fit_sampled = v;
        }
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.minimal, self.tol_minimal);
        set(&mut t.free_boundary, self.tol_free_boundary);
        set(&mut t.hopf_boundary, self.tol_hopf_boundary);
        set(&mut t.deck, self.tol_deck);
        set(&mut t.laws, self.tol_laws);
        set(&mut t.hopf_oracle, self.tol_hopf_oracle);
        set(&mut t.fit_symbolic, self.tol_fit);
        set(&mut t.fit_sampled, self.tol_fit);
        set(&mut t.clearance, self.clearance);
        Ok(t)
    }
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    Ok((num(a)?, num(b)?))
}

/// Accepts `x`, `x,y`, `yi`, `x+yi` and `x-yi` (also with `j`).
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a complex number");
    if let Some((a, b)) = t.split_once(',') {
        let (a, b) = (a.parse::<f64>(), b.parse::<f64>());
        return match (a, b) {
            (Ok(a), Ok(b)) => Ok(C64::new(a, b)),
            _ => Err(bad()),
        };
    }
    if let Ok(x) = t.parse::<f64>() {
        return Ok(C64::new(x, 0.0));
    }
    let body = t.strip_suffix('i').or_else(|| t.strip_suffix('j')).ok_or_else(bad)?;
    let imag = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => p.parse::<f64>().map_err(|_| bad()),
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, imag(&body[k..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |a, b| C64::new(a, b);
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-0.37").unwrap(), c(-0.37, 0.0));
        assert_eq!(parse_complex("0.5,-2").unwrap(), c(0.5, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("1.5-0.25i").unwrap(), c(1.5, -0.25));
        assert_eq!(parse_complex("1e-3+1e-2j").unwrap(), c(1e-3, 1e-2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut a = TolArgs {
            tol: Some(1e-3),
            tol_minimal: None,
            tol_free_boundary: None,
            tol_hopf_boundary: None,
            tol_deck: Some(1e-9),
            tol_laws: None,
            tol_hopf_oracle: None,
            tol_fit: None,
            clearance: None,
        };
        let t = a.resolve().unwrap();
        assert_eq!((t.minimal, t.laws, t.deck), (1e-3, 1e-3, 1e-9));
        a.tol = Some(-1.0);
        assert!(a.resolve().unwrap_err().contains("--tol"));
    }
}
