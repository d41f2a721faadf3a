use std::ops::RangeInclusive;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};
use wkb_core::angular::{angular_wavefunction, polar_phase_integral, polar_phase_integral_exact, quantize_polar};
use wkb_core::oracle::{compare_methods_with, diagonalize_bound};
use wkb_core::wavefunction::{sample_full_wkb, sample_standing_wave};
use wkb_core::{
    count_nodes, langer_m2, normalize_on_interval, CentrifugalVariant, ClosedFormSpectrum, Method, PotentialSpec,
    Quantizer, QuantumNumbers, SearchDomain, SpectrumVariant, WkbError,
};

use crate::args::*;
use crate::config::{resolve_potential, resolve_tolerances, resolve_units, ResolvedPotential};
use crate::error::{CliError, EXIT_CONVERGENCE};
use crate::output::*;

/// Rendered output plus where it goes and any non-fatal notes.
pub struct Rendered {
    pub text: String,
    pub out: Option<PathBuf>,
    pub warnings: Vec<String>,
}

pub const THREADS_ENV: &str = "WKB_SPECTRA_THREADS";

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::io(format!("cannot start worker threads: {e}")))
}

fn range(flag: &str, single: Option<u32>, max: Option<u32>) -> Result<RangeInclusive<u32>, CliError> {
    match (single, max) {
        (Some(lo), Some(hi)) if lo > hi => Err(CliError::usage(format!("--{flag} {lo} exceeds --{flag}-max {hi}"))),
        (Some(lo), Some(hi)) => Ok(lo..=hi),
        (Some(v), None) => Ok(v..=v),
        (None, Some(hi)) => Ok(0..=hi),
        (None, None) => Ok(0..=0),
    }
}

fn potential_echo(p: &ResolvedPotential) -> Value {
    json!({
        "potential": p.name,
        "params": p.params,
        "table": p.table.as_ref().map(|t| t.display().to_string()),
        "hbar": p.units.hbar(),
        "mass": p.units.mass(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn method_of(m: MethodArg) -> Method {
    match m {
        MethodArg::Closed => Method::ClosedForm,
        MethodArg::Quadrature => Method::Quadrature2TP,
        MethodArg::Multiwell => Method::QuadratureMultiWell,
        MethodArg::Oracle => Method::Oracle,
    }
}

fn variant_of(v: VariantArg) -> SpectrumVariant {
    match v {
        VariantArg::Standard => SpectrumVariant::Standard,
        VariantArg::MorseNoCentrifugal => SpectrumVariant::MorseNoCentrifugal,
        VariantArg::MorseWithM => SpectrumVariant::MorseWithM,
    }
}

fn parse_domain(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::usage(format!("--domain expects lo:hi, got {text:?}"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(bad());
    }
    Ok((a, b))
}

fn row_context(n_r: u32, l: u32, method: Method) -> String {
    format!("n_r={n_r} l={l} (N={}) method={}", n_r + l + 1, method.name())
}

type Outcome = (u32, u32, Method, Result<(f64, f64), WkbError>);

pub fn spectrum(a: &SpectrumArgs) -> Result<Rendered, CliError> {
    let pot = resolve_potential(&a.potential)?;
    let tol = resolve_tolerances(&a.tol)?;
    let ls = range("l", a.l, a.l_max)?;
    let nrs = range("nr", a.nr, a.nr_max)?;
    let mut methods = a.method.clone();
    methods.sort();
    methods.dedup();
    let spec = &pot.spec;
    let units = pot.units;
    let q = Quantizer::with_tolerances(units, tol);

    let closed = if methods.contains(&MethodArg::Closed) {
        Some(match a.variant {
            Some(v) => ClosedFormSpectrum::new(spec.clone(), variant_of(v), units)?,
            None => ClosedFormSpectrum::for_potential(spec.clone(), units)?,
        })
    } else {
        None
    };
    if methods.contains(&MethodArg::Multiwell) && !spec.multiwell_capable() {
        return Err(CliError::usage(format!(
            "method multiwell needs a potential defined for r < 0 (oscillator, linear-oscillator), not {}",
            pot.name
        )));
    }
    if a.cuts == 0 {
        return Err(CliError::usage("--cuts must be at least 1"));
    }
    let domain = match &a.domain {
        Some(t) => {
            let (lo, hi) = parse_domain(t)?;
            SearchDomain::Signed(lo, hi)
        }
        None => {
            let reach = 10.0 * spec.length_scale(&units) * (2 + nrs.end() + ls.end()) as f64;
            SearchDomain::Signed(-reach, reach)
        }
    };
    let variant = match a.centrifugal {
        CentrifugalArg::Ll1 => CentrifugalVariant::Ll1,
        CentrifugalArg::Langer => CentrifugalVariant::LangerHalfSquared,
    };

    enum Job {
        Level(u32, u32, MethodArg),
        Oracle(u32),
    }
    let mut jobs = Vec::new();
    for &m in &methods {
        for l in ls.clone() {
            if m == MethodArg::Oracle {
                jobs.push(Job::Oracle(l));
            } else {
                jobs.extend(nrs.clone().map(|n_r| Job::Level(l, n_r, m)));
            }
        }
    }

    let run = |job: &Job| -> Vec<Outcome> {
        match *job {
            Job::Level(l, n_r, m) => {
                let qn = QuantumNumbers::radial(n_r, l);
                let r = match m {
                    MethodArg::Closed => closed.as_ref().expect("closed form built").energy(n_r, l).map(|e| (e, 0.0)),
                    MethodArg::Quadrature => q.quantize_2tp(spec, qn).map(|e| (e.energy, e.residual)),
                    MethodArg::Multiwell => {
                        q.quantize_multiwell(spec, qn, a.cuts, domain).map(|e| (e.energy, e.residual))
                    }
                    MethodArg::Oracle => unreachable!("oracle runs per l"),
                };
                vec![(l, n_r, method_of(m), r)]
            }
            Job::Oracle(l) => {
                let n_levels = *nrs.end() as usize + 1;
                let res = diagonalize_bound(spec, l, variant, &units, n_levels, a.points);
                nrs.clone()
                    .map(|n_r| {
                        let r = match &res {
                            Ok(o) => o
                                .eigenvalues
                                .get(n_r as usize)
                                .map(|&e| (e, o.refinement_estimate[n_r as usize]))
                                .ok_or_else(|| {
                                    WkbError::NoBoundState("eigenfunction does not decay inside the oracle box".into())
                                }),
                            Err(e) => Err(e.clone()),
                        };
                        (l, n_r, Method::Oracle, r)
                    })
                    .collect()
            }
        }
    };
    let mut outcomes: Vec<Outcome> = thread_pool()?.install(|| jobs.par_iter().flat_map_iter(run).collect());
    outcomes.sort_by_key(|o| (o.0, o.1, o.2));

    let mut rows = Vec::with_capacity(outcomes.len());
    for (l, n_r, method, r) in outcomes {
        match r {
            Ok((energy, residual)) => {
                rows.push(SpectrumRow { n_r, l, method: method.name().to_string(), energy, residual })
            }
            Err(e) => return Err(CliError::from_core(&row_context(n_r, l, method), &e)),
        }
    }

    let echo = merge(
        potential_echo(&pot),
        json!({
            "command": "spectrum",
            "l": [ls.start(), ls.end()],
            "n_r": [nrs.start(), nrs.end()],
            "methods": methods.iter().map(|&m| method_of(m).name()).collect::<Vec<_>>(),
            "variant": closed.as_ref().map(|c| format!("{:?}", c.variant())),
            "cuts": a.cuts,
            "domain": match domain { SearchDomain::Signed(lo, hi) => json!([lo, hi]), _ => Value::Null },
            "oracle_points": a.points,
            "centrifugal": variant.name(),
            "format": format_name(a.output.format),
        }),
    );
    let report = Report { config_echo: echo, rows, provenance: Provenance::new(tol), extra: Value::Null };
    Ok(Rendered { text: render(a.output.format, &report), out: a.output.out.clone(), warnings: Vec::new() })
}

pub fn angular(a: &AngularArgs) -> Result<Rendered, CliError> {
    let units = resolve_units((None, None), &a.units)?;
    QuantumNumbers::new(0, a.l, a.mz)?;
    let ev = quantize_polar(a.l - a.mz.unsigned_abs(), a.mz, &units);
    let numeric = polar_phase_integral(ev.m, ev.m_z_action, &units)?;
    let row = AngularRow {
        l: ev.l,
        m_z: ev.m_z,
        m: ev.m,
        m_z_action: ev.m_z_action,
        m_squared: ev.m_squared(),
        polar_integral_numeric: numeric,
        polar_integral_exact: polar_phase_integral_exact(ev.m, ev.m_z_action),
    };
    let extra = match a.samples {
        Some(n) if n < 2 => return Err(CliError::usage("--samples needs at least 2 points")),
        Some(n) => {
            let samples: Vec<AngularSample> = (0..n)
                .map(|i| {
                    let theta = std::f64::consts::PI * i as f64 / (n - 1) as f64;
                    let y = angular_wavefunction(a.l, a.mz, theta, 0.0)?;
                    Ok(AngularSample { theta, re: y.re, im: y.im })
                })
                .collect::<Result<_, WkbError>>()?;
            json!({ "samples": samples })
        }
        None => Value::Null,
    };
    let echo = json!({
        "command": "angular",
        "l": a.l,
        "m_z": a.mz,
        "hbar": units.hbar(),
        "mass": units.mass(),
        "samples": a.samples,
        "format": format_name(a.output.format),
    });
    let report = Report {
        config_echo: echo,
        rows: vec![row],
        provenance: Provenance::new(json!({ "polar_quad_rel": 1e-12 })),
        extra,
    };
    Ok(Rendered { text: render(a.output.format, &report), out: a.output.out.clone(), warnings: Vec::new() })
}

pub fn wavefunction(a: &WavefunctionArgs) -> Result<Rendered, CliError> {
    let pot = resolve_potential(&a.potential)?;
    let tol = resolve_tolerances(&a.tol)?;
    let qn = QuantumNumbers::new(a.nr, a.l, a.mz)?;
    if a.samples < 2 {
        return Err(CliError::usage("--samples needs at least 2 points"));
    }
    if a.form == FormArg::StandingWave && !matches!(pot.spec, PotentialSpec::Coulomb { .. }) {
        return Err(CliError::usage("the standing-wave form is only defined for the coulomb potential"));
    }
    let units = pot.units;
    let spec = &pot.spec;
    let q = Quantizer::with_tolerances(units, tol);
    let m2 = langer_m2(a.l, &units);
    let method = method_of(a.method);
    let ctx = row_context(a.nr, a.l, method);
    let wrap = |e: WkbError| CliError::from_core(&ctx, &e);
    let structure = match a.method {
        MethodArg::Quadrature => q.solve_2tp(spec, m2, a.nr, SearchDomain::Radial, None).map_err(wrap)?.structure,
        MethodArg::Closed => {
            let e = ClosedFormSpectrum::for_potential(spec.clone(), units)?.energy(a.nr, a.l).map_err(wrap)?;
            q.find_turning_structure(spec, m2, e, SearchDomain::Radial).map_err(wrap)?
        }
        _ => return Err(CliError::usage("wavefunction takes --method closed or quadrature")),
    };
    let mut sample = match a.form {
        FormArg::FullWkb => sample_full_wkb(spec, m2, qn, method, &units, &structure, a.samples).map_err(wrap)?,
        FormArg::StandingWave => {
            sample_standing_wave(structure.energy, qn, method, &units, structure.intervals[0], a.samples)
        }
    };
    if a.normalize {
        sample = normalize_on_interval(&sample).map_err(wrap)?;
    }
    let mut warnings = Vec::new();
    let nodes = match count_nodes(&sample, &units) {
        Ok(n) => Some(n),
        Err(e) => {
            warnings.push(e.to_string());
            None
        }
    };
    let text = match a.output.format {
        Format::Csv => sample.to_csv(),
        Format::Json => {
            let echo = merge(
                potential_echo(&pot),
                json!({
                    "command": "wavefunction",
                    "n_r": a.nr,
                    "l": a.l,
                    "m_z": a.mz,
                    "form": format!("{:?}", a.form),
                    "method": method.name(),
                    "samples": a.samples,
                    "normalize": a.normalize,
                    "format": "json",
                }),
            );
            let doc = json!({
                "config_echo": echo,
                "sample": sample,
                "nodes": nodes,
                "provenance": Provenance::new(tol),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("sample serializes");
            s.push('\n');
            s
        }
    };
    Ok(Rendered { text, out: a.output.out.clone(), warnings })
}

pub fn compare(a: &CompareArgs) -> Result<Rendered, CliError> {
    let pot = resolve_potential(&a.potential)?;
    let tol = resolve_tolerances(&a.tol)?;
    if a.points < wkb_core::oracle::MIN_POINTS {
        return Err(CliError::usage(format!("--points must be at least {}", wkb_core::oracle::MIN_POINTS)));
    }
    let q = Quantizer::with_tolerances(pot.units, tol);
    let core_rows = compare_methods_with(&pot.spec, a.l, 0..=a.nr_max, &q, a.points);
    if core_rows.iter().all(|r| r.is_empty()) {
        let detail: Vec<_> = core_rows.iter().flat_map(|r| r.errors.iter().cloned()).collect();
        return Err(CliError {
            code: EXIT_CONVERGENCE,
            message: format!("every method failed: {}", detail.join("; ")),
        });
    }
    let rows: Vec<CompareRow> = core_rows.iter().map(CompareRow::from).collect();
    let warnings =
        rows.iter().flat_map(|r| r.errors.iter().map(move |e| format!("n_r={} l={}: {e}", r.n_r, r.l))).collect();
    let echo = merge(
        potential_echo(&pot),
        json!({
            "command": "compare",
            "l": a.l,
            "n_r": [0, a.nr_max],
            "oracle_points": a.points,
            "format": format_name(a.output.format),
        }),
    );
    let report = Report { config_echo: echo, rows, provenance: Provenance::new(tol), extra: Value::Null };
    Ok(Rendered { text: render(a.output.format, &report), out: a.output.out.clone(), warnings })
}
