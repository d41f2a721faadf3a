//! Potential selection from flags and key=value files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use wkb_core::{PotentialSpec, UnitsContext};

use crate::args::{PotentialArgs, TolArgs, UnitsArgs};
use crate::error::CliError;
use wkb_core::Tolerances;

pub const POTENTIALS: &[&str] = &["coulomb", "oscillator", "hulthen", "morse", "linear-oscillator", "tabulated"];

/// Accepted parameters and their defaults.
fn defaults(name: &str) -> Option<&'static [(&'static str, f64)]> {
    Some(match name {
        "coulomb" => &[("alpha", 1.0)],
        "oscillator" => &[("omega", 1.0)],
        "hulthen" => &[("v0", 10.0), ("r0", 1.0)],
        "morse" => &[("v0", 1.0), ("morse_alpha", 1.0), ("r0", 1.0)],
        "linear-oscillator" => &[("k", 1.0), ("omega", 1.0)],
        "tabulated" => &[],
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct ResolvedPotential {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub table: Option<PathBuf>,
    pub spec: PotentialSpec,
    pub units: UnitsContext,
}

#[derive(Debug, Default)]
struct FileConfig {
    potential: Option<String>,
    table: Option<PathBuf>,
    hbar: Option<f64>,
    mass: Option<f64>,
    params: Vec<(String, f64)>,
}

fn parse_number(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::usage(format!("parameter {key}: cannot parse {value:?} as a number")))
}

pub fn parse_params(text: &str) -> Result<Vec<(String, f64)>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (k, v) =
                pair.split_once('=').ok_or_else(|| CliError::usage(format!("expected key=value, got {pair:?}")))?;
            let k = k.trim().to_string();
            let v = parse_number(&k, v)?;
            Ok((k, v))
        })
        .collect()
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = FileConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "potential" => cfg.potential = Some(v.to_string()),
            "table" => cfg.table = Some(path.parent().unwrap_or(Path::new(".")).join(v)),
            "hbar" => cfg.hbar = Some(parse_number(k, v)?),
            "mass" => cfg.mass = Some(parse_number(k, v)?),
            _ => cfg.params.push((k.to_string(), parse_number(k, v)?)),
        }
    }
    Ok(cfg)
}

/// Reads `r, V` pairs separated by commas or whitespace; `#` lines and a
/// non-numeric first line are skipped.
pub fn read_table(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read table {}: {e}", path.display())))?;
    let (mut r, mut v) = (Vec::new(), Vec::new());
    let mut seen_data = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let parsed = match cols.as_slice() {
            [a, b] => a.parse::<f64>().ok().zip(b.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some((a, b)) => {
                r.push(a);
                v.push(b);
                seen_data = true;
            }
            None if !seen_data => continue,
            None => return Err(CliError::usage(format!("{}:{}: expected two numbers", path.display(), i + 1))),
        }
    }
    Ok((r, v))
}

pub fn resolve_units(file: (Option<f64>, Option<f64>), args: &UnitsArgs) -> Result<UnitsContext, CliError> {
    let hbar = args.hbar.or(file.0).unwrap_or(1.0);
    let mass = args.mass.or(file.1).unwrap_or(1.0);
    Ok(UnitsContext::new(hbar, mass)?)
}

pub fn resolve_potential(args: &PotentialArgs) -> Result<ResolvedPotential, CliError> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let name = args
        .potential
        .clone()
        .or(file.potential.clone())
        .ok_or_else(|| CliError::usage("no potential given (--potential or `potential =` in --config)"))?;
    let accepted = defaults(&name).ok_or_else(|| {
        CliError::usage(format!("unknown potential {name:?}; expected one of {}", POTENTIALS.join(", ")))
    })?;
    let mut params: BTreeMap<String, f64> = accepted.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let cli = match &args.params {
        Some(text) => parse_params(text)?,
        None => Vec::new(),
    };
    for (k, v) in file.params.iter().chain(&cli) {
        if !params.contains_key(k) {
            let names: Vec<_> = accepted.iter().map(|p| p.0).collect();
            return Err(CliError::usage(format!(
                "parameter {k:?} does not apply to {name} (accepted: {})",
                if names.is_empty() { "none".to_string() } else { names.join(", ") }
            )));
        }
        params.insert(k.clone(), *v);
    }
    let units = resolve_units((file.hbar, file.mass), &args.units)?;
    let table = args.table.clone().or(file.table);
    let p = |k: &str| params[k];
    let spec = match name.as_str() {
        "coulomb" => PotentialSpec::coulomb(p("alpha")),
        "oscillator" => PotentialSpec::oscillator(p("omega")),
        "hulthen" => PotentialSpec::hulthen(p("v0"), p("r0")),
        "morse" => PotentialSpec::morse(p("v0"), p("morse_alpha"), p("r0")),
        "linear-oscillator" => PotentialSpec::linear_plus_oscillator(p("k"), p("omega")),
        _ => {
            let path = table.as_ref().ok_or_else(|| CliError::usage("tabulated potential needs --table"))?;
            let (r, v) = read_table(path)?;
            PotentialSpec::tabulated(r, v)
        }
    }?;
    Ok(ResolvedPotential { name, params, table, spec, units })
}

pub fn resolve_tolerances(args: &TolArgs) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for (flag, value, slot) in
        [("--tol-quad", args.tol_quad, &mut tol.quad_rel), ("--tol-root", args.tol_root, &mut tol.root_residual)]
    {
        if let Some(v) = value {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::usage(format!("{flag} must be positive and finite, got {v}")));
            }
            *slot = v;
        }
    }
    Ok(tol)
}
