//! Quasiclassical radial eigenfunctions inside the classically allowed
//! region, node counting and normalization.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Result, WkbError};
use crate::potential::{EffectiveMomentumSquared, PotentialSpec, QuantumNumbers, UnitsContext};
use crate::quadrature::{integrate_adaptive, GaussLegendre};
use crate::quantizer::{Method, Quantizer, TurningStructure};

/// Default number of samples, spaced uniformly in phase.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Turning-point exclusion band, as a fraction of the interval width.
pub const TURNING_BAND: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveForm {
    ElementaryStandingWave,
    #[serde(rename = "full_wkb")]
    FullWKB,
}

/// Amplitudes on an increasing grid, with the local momentum at each
/// point (used for the resolution check).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub local_momentum: Vec<f64>,
    pub qn: QuantumNumbers,
    pub form: WaveForm,
    pub allowed_interval: (f64, f64),
    pub energy: f64,
    pub method: Method,
}

/// `cos(p_n r/ℏ + (π/2) n_r)` with `p_n = √(2m|E_n|)`, unnormalized.
pub fn radial_standing_wave(energy: f64, n_r: u32, units: &UnitsContext, r: f64) -> f64 {
    let p = (2.0 * units.mass() * energy.abs()).sqrt();
    (p * r / units.hbar() + FRAC_PI_2 * n_r as f64).cos()
}

fn containing_interval(structure: &TurningStructure, r: f64) -> Option<(f64, f64)> {
    structure.intervals.iter().copied().find(|&(a, b)| r > a && r < b)
}

/// `∫_{r₁}^{r} p dr'` through `r' = r₁ + (r − r₁)s²`, smooth at the
/// turning point.
fn phase_from_left(f: &EffectiveMomentumSquared<'_>, q: &Quantizer, r1: f64, r: f64) -> Result<f64> {
    let span = r - r1;
    let v = integrate_adaptive("full_wkb_radial", 0.0, 1.0, q.quad_tolerance(), |s| {
        let x = r1 + span * s * s;
        f.value_signed(x).map(|v| v.max(0.0).sqrt()).unwrap_or(0.0) * 2.0 * span * s
    })?;
    Ok(v.value)
}

/// Leading-order WKB amplitude `p^{−1/2} cos(∫_{r₁}^r p dr'/ℏ − π/4)`.
pub fn full_wkb_radial(
    spec: &PotentialSpec,
    m2: f64,
    energy: f64,
    units: &UnitsContext,
    structure: &TurningStructure,
    r: f64,
) -> Result<f64> {
    let (a, b) = containing_interval(structure, r)
        .ok_or_else(|| WkbError::domain(format!("r = {r} is outside every allowed interval")))?;
    let delta = TURNING_BAND * (b - a);
    if r <= a + delta || r >= b - delta {
        return Err(WkbError::TurningPointProximity { r, delta });
    }
    let f = EffectiveMomentumSquared::new(spec, m2, energy, *units);
    let q = Quantizer::new(*units);
    let phase = phase_from_left(&f, &q, a, r)? / units.hbar();
    let p = f.value_signed(r)?.sqrt();
    Ok((phase - FRAC_PI_4).cos() / p.sqrt())
}

/// Full-WKB sample on the first allowed interval, `n_points` spaced
/// uniformly in phase between the two turning-point bands.
pub fn sample_full_wkb(
    spec: &PotentialSpec,
    m2: f64,
    qn: QuantumNumbers,
    method: Method,
    units: &UnitsContext,
    structure: &TurningStructure,
    n_points: usize,
) -> Result<WavefunctionSample> {
    let &(a, b) = structure.intervals.first().ok_or(WkbError::NoAllowedRegion { energy: structure.energy })?;
    let n_points = n_points.max(2);
    let f = EffectiveMomentumSquared::new(spec, m2, structure.energy, *units);
    let q = Quantizer::new(*units);
    let hbar = units.hbar();
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let delta = TURNING_BAND * (b - a);
    let u_lo = ((a + delta - c) / h).asin();
    let u_hi = ((b - delta - c) / h).asin();
    let r_of = |u: f64| c + h * u.sin();
    let dphase = |u: f64| f.value_signed(r_of(u)).map(|v| v.max(0.0).sqrt()).unwrap_or(0.0) * h * u.cos() / hbar;
    let rule = GaussLegendre::new(8);

    // cumulative phase on a fine grid in the sine variable
    let fine = 8 * n_points;
    let du = (u_hi - u_lo) / fine as f64;
    let mut us = Vec::with_capacity(fine + 1);
    let mut phases = Vec::with_capacity(fine + 1);
    let mut acc = phase_from_left(&f, &q, a, r_of(u_lo))? / hbar;
    us.push(u_lo);
    phases.push(acc);
    for j in 1..=fine {
        let (u0, u1) = (u_lo + (j - 1) as f64 * du, u_lo + j as f64 * du);
        acc += rule.integrate(u0, u1, dphase);
        us.push(u1);
        phases.push(acc);
    }

    let (first, last) = (phases[0], phases[fine]);
    let mut grid = Vec::with_capacity(n_points);
    let mut values = Vec::with_capacity(n_points);
    let mut local_momentum = Vec::with_capacity(n_points);
    let mut j = 0;
    for i in 0..n_points {
        let target = first + (last - first) * i as f64 / (n_points - 1) as f64;
        while j + 1 < fine && phases[j + 1] < target {
            j += 1;
        }
        let span = phases[j + 1] - phases[j];
        let t = if span > 0.0 { ((target - phases[j]) / span).clamp(0.0, 1.0) } else { 0.0 };
        let u = us[j] + t * (us[j + 1] - us[j]);
        let phase = phases[j] + rule.integrate(us[j], u, dphase);
        let r = r_of(u);
        let p = f.value_signed(r)?.max(0.0).sqrt();
        grid.push(r);
        values.push((phase - FRAC_PI_4).cos() / p.sqrt());
        local_momentum.push(p);
    }
    Ok(WavefunctionSample {
        grid,
        values,
        local_momentum,
        qn,
        form: WaveForm::FullWKB,
        allowed_interval: (a, b),
        energy: structure.energy,
        method,
    })
}

/// Elementary standing wave on `n_points` uniform points of the allowed
/// interval (minus the turning-point bands).
pub fn sample_standing_wave(
    energy: f64,
    qn: QuantumNumbers,
    method: Method,
    units: &UnitsContext,
    interval: (f64, f64),
    n_points: usize,
) -> WavefunctionSample {
    let (a, b) = interval;
    let n_points = n_points.max(2);
    let delta = TURNING_BAND * (b - a);
    let (lo, hi) = (a + delta, b - delta);
    let p = (2.0 * units.mass() * energy.abs()).sqrt();
    let grid: Vec<f64> = (0..n_points).map(|i| lo + (hi - lo) * i as f64 / (n_points - 1) as f64).collect();
    let values = grid.iter().map(|&r| radial_standing_wave(energy, qn.n_r(), units, r)).collect();
    WavefunctionSample {
        local_momentum: vec![p; n_points],
        grid,
        values,
        qn,
        form: WaveForm::ElementaryStandingWave,
        allowed_interval: interval,
        energy,
        method,
    }
}

/// Number of strict sign changes (exact zeros are skipped).
///
/// Fails if any grid step exceeds 1/32 of the local wavelength `2πℏ/p`.
pub fn count_nodes(sample: &WavefunctionSample, units: &UnitsContext) -> Result<usize> {
    for i in 0..sample.grid.len().saturating_sub(1) {
        let p = sample.local_momentum[i].max(sample.local_momentum[i + 1]);
        if p > 0.0 {
            let wavelength = 2.0 * PI * units.hbar() / p;
            let spacing = sample.grid[i + 1] - sample.grid[i];
            if spacing > wavelength / 32.0 {
                return Err(WkbError::Undersampled { r: sample.grid[i], spacing, wavelength });
            }
        }
    }
    let mut nodes = 0;
    let mut last = 0.0f64;
    for &v in &sample.values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    Ok(nodes)
}

/// Rescales so that the trapezoid-rule `∫ψ² dr` over the grid is one.
pub fn normalize_on_interval(sample: &WavefunctionSample) -> Result<WavefunctionSample> {
    if sample.values.iter().any(|v| !v.is_finite()) {
        return Err(WkbError::DegenerateSample("sample contains non-finite values".into()));
    }
    let norm2: f64 = sample
        .grid
        .windows(2)
        .zip(sample.values.windows(2))
        .map(|(r, v)| 0.5 * (r[1] - r[0]) * (v[0] * v[0] + v[1] * v[1]))
        .sum();
    if !(norm2 > 0.0) {
        return Err(WkbError::DegenerateSample("zero norm".into()));
    }
    let scale = norm2.sqrt().recip();
    let mut out = sample.clone();
    out.values.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

impl WavefunctionSample {
    /// Two-column `r,psi` CSV preceded by `#` comment lines carrying the
    /// quantum numbers, method and energy.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let form = match self.form {
            WaveForm::ElementaryStandingWave => "elementary_standing_wave",
            WaveForm::FullWKB => "full_wkb",
        };
        let _ = writeln!(out, "# n_r={} l={} m_z={}", self.qn.n_r(), self.qn.l(), self.qn.m_z());
        let _ = writeln!(out, "# method={} form={form}", self.method.name());
        let _ = writeln!(out, "# energy={:.16e}", self.energy);
        out.push_str("r,psi\n");
        for (r, v) in self.grid.iter().zip(&self.values) {
            let _ = writeln!(out, "{r:.16e},{v:.16e}");
        }
        out
    }
}
