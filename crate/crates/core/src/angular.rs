//! Quantization of the azimuthal and polar motion and the quasiclassical
//! angular eigenfunctions.
//!
//! The polar equation carries a `1/sin²θ` barrier whose phase integral
//! between its two turning points is `π(M − |M_z|)`. Setting that equal to
//! `πℏ(n_θ + ½)` gives `M = (l + ½)ℏ` with `l = n_θ + |m_z|`, so even the
//! s-wave keeps `M₀ = ℏ/2`. This `M²` is the centrifugal coefficient used by
//! every radial computation in the crate.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, WkbError};
use crate::potential::UnitsContext;
use crate::quadrature::{integrate_between_turning_points, Tolerance};

/// Quantized angular momentum magnitude and projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularEigenvalue {
    /// `M = (l + ½)ℏ`
    pub m: f64,
    /// `M_z = m_z ℏ`
    pub m_z_action: f64,
    pub l: u32,
    pub m_z: i32,
}

impl AngularEigenvalue {
    /// `M²`, computed from the stored `M` so that `(l+½)²ℏ²` is rebuilt
    /// identically everywhere.
    pub fn m_squared(&self) -> f64 {
        self.m * self.m
    }
}

/// `M = (l + ½)ℏ`.
#[inline]
pub fn angular_momentum(l: u32, units: &UnitsContext) -> f64 {
    (l as f64 + 0.5) * units.hbar()
}

/// `M² = (l + ½)²ℏ²`, the centrifugal coefficient of the radial equation.
#[inline]
pub fn langer_m2(l: u32, units: &UnitsContext) -> f64 {
    let m = angular_momentum(l, units);
    m * m
}

pub fn quantize_azimuthal(m_z: i32, units: &UnitsContext) -> f64 {
    units.hbar() * m_z as f64
}

pub fn quantize_polar(n_theta: u32, m_z: i32, units: &UnitsContext) -> AngularEigenvalue {
    let l = n_theta + m_z.unsigned_abs();
    AngularEigenvalue { m: angular_momentum(l, units), m_z_action: quantize_azimuthal(m_z, units), l, m_z }
}

/// Closed form of [`polar_phase_integral`]: `π(M − |M_z|)`.
pub fn polar_phase_integral_exact(m: f64, m_z: f64) -> f64 {
    PI * (m - m_z.abs())
}

/// `∫ √(M² − M_z²/sin²θ) dθ` over the classically allowed polar range,
/// computed numerically.
pub fn polar_phase_integral(m: f64, m_z: f64, units: &UnitsContext) -> Result<f64> {
    let _ = units;
    let mz = m_z.abs();
    if !(m > mz) {
        return Err(WkbError::NoAllowedRegion { energy: m * m });
    }
    if mz == 0.0 {
        return Ok(PI * m);
    }
    let theta1 = (mz / m).asin();
    let theta2 = PI - theta1;
    let q = integrate_between_turning_points(
        "polar_phase_integral",
        theta1,
        theta2,
        Tolerance::relative(1e-12),
        |theta| {
            let s = theta.sin();
            let arg = m * m - mz * mz / (s * s);
            arg.max(0.0).sqrt()
        },
    )?;
    Ok(q.value)
}

/// Elementary far-from-turning-point form
/// `Ỹ_lm = (1/π) √((l+½)/(l−m+½)) cos[(l+½)θ + (π/2)(l−m)] e^{imφ}`.
///
/// Only the elementary form is provided; it is not matched to the full
/// WKB solution near the polar turning points.
pub fn angular_wavefunction(l: u32, m_z: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m_z.unsigned_abs() > l {
        return Err(WkbError::InvalidQuantumNumbers(format!("|m_z| = {} exceeds l = {l}", m_z.abs())));
    }
    let lh = l as f64 + 0.5;
    let lm = l as f64 - m_z as f64;
    let norm = (lh / (lm + 0.5)).sqrt() / PI;
    let radial = norm * (lh * theta + FRAC_PI_2 * lm).cos();
    Ok(Complex64::from_polar(1.0, m_z as f64 * phi) * radial)
}
