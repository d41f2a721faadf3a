//! Closed-form spectra of the five built-in potentials.
//!
//! Every formula is written in terms of the angular momentum magnitude `M`
//! (the `*_with_m` functions) and the `l`-indexed entry points substitute
//! `M = (l + ½)ℏ`. At `l = 0` that is `M₀ = ℏ/2`, so the ground-state energy
//! of each potential carries the zero-point angular contribution.

use serde::Serialize;

use crate::angular::angular_momentum;
use crate::error::{Result, WkbError};
use crate::potential::{PotentialKind, PotentialSpec, UnitsContext};

/// Which closed form to use. The two Morse variants differ because one
/// drops the centrifugal term entirely while the other keeps `M² ≥ ℏ²/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumVariant {
    Standard,
    MorseNoCentrifugal,
    MorseWithM,
}

/// `E = −α²m / (2[(n_r+½)ℏ + M]²)`
pub fn coulomb_energy_with_m(alpha: f64, units: &UnitsContext, n_r: u32, m_action: f64) -> f64 {
    let n = (n_r as f64 + 0.5) * units.hbar() + m_action;
    -alpha * alpha * units.mass() / (2.0 * n * n)
}

pub fn coulomb_energy(alpha: f64, units: &UnitsContext, n_r: u32, l: u32) -> f64 {
    coulomb_energy_with_m(alpha, units, n_r, angular_momentum(l, units))
}

/// `E = ω[2ℏ(n_r+½) + M]`
pub fn oscillator_energy_with_m(omega: f64, units: &UnitsContext, n_r: u32, m_action: f64) -> f64 {
    omega * (2.0 * units.hbar() * (n_r as f64 + 0.5) + m_action)
}

pub fn oscillator_energy(omega: f64, units: &UnitsContext, n_r: u32, l: u32) -> f64 {
    oscillator_energy_with_m(omega, units, n_r, angular_momentum(l, units))
}

/// `E = −(1/(8mr₀²)) (2mV₀r₀²/N − N)²` with `N = (n_r+½)ℏ + M`, bound while
/// `N² < 2mV₀r₀²`.
pub fn hulthen_energy_with_m(v0: f64, r0: f64, units: &UnitsContext, n_r: u32, m_action: f64) -> Result<f64> {
    let m = units.mass();
    let n = (n_r as f64 + 0.5) * units.hbar() + m_action;
    let depth = 2.0 * m * v0 * r0 * r0;
    if n * n >= depth {
        return Err(WkbError::NoBoundState(format!(
            "Hulthen principal number N = {n} has N^2 >= 2 m V0 r0^2 = {depth}"
        )));
    }
    let t = depth / n - n;
    Ok(-t * t / (8.0 * m * r0 * r0))
}

pub fn hulthen_energy(v0: f64, r0: f64, units: &UnitsContext, n_r: u32, l: u32) -> Result<f64> {
    hulthen_energy_with_m(v0, r0, units, n_r, angular_momentum(l, units))
}

/// Morse spectrum in either variant.
///
/// `MorseNoCentrifugal` (l = 0 only): `E = −V₀[1 − αℏ(n_r+½)/(r₀√(2mV₀))]²`,
/// rejected once the bracket is no longer positive.
///
/// `MorseWithM`: `E = −V₀[1 − α(2ℏ(n_r+½) + M)/(r₀√(2mV₀))]²`, evaluated as
/// written. Its bracket is already negative for the ground state at
/// `V₀ = α = r₀ = 1`, so no sign check is applied.
pub fn morse_energy(
    v0: f64,
    alpha: f64,
    r0: f64,
    units: &UnitsContext,
    n_r: u32,
    l: u32,
    variant: SpectrumVariant,
) -> Result<f64> {
    morse_energy_with_m(v0, alpha, r0, units, n_r, l, angular_momentum(l, units), variant)
}

#[allow(clippy::too_many_arguments)]
pub fn morse_energy_with_m(
    v0: f64,
    alpha: f64,
    r0: f64,
    units: &UnitsContext,
    n_r: u32,
    l: u32,
    m_action: f64,
    variant: SpectrumVariant,
) -> Result<f64> {
    let hbar = units.hbar();
    let scale = r0 * (2.0 * units.mass() * v0).sqrt();
    let nr = n_r as f64 + 0.5;
    match variant {
        SpectrumVariant::MorseNoCentrifugal => {
            if l != 0 {
                return Err(WkbError::InvalidVariant(format!(
                    "the no-centrifugal Morse spectrum is only defined for l = 0, got l = {l}"
                )));
            }
            let bracket = 1.0 - alpha * hbar * nr / scale;
            if bracket <= 0.0 {
                return Err(WkbError::NoBoundState(format!("Morse level n_r = {n_r} lies above dissociation")));
            }
            Ok(-v0 * bracket * bracket)
        }
        SpectrumVariant::MorseWithM => {
            let bracket = 1.0 - alpha * (2.0 * hbar * nr + m_action) / scale;
            Ok(-v0 * bracket * bracket)
        }
        SpectrumVariant::Standard => {
            Err(WkbError::InvalidVariant("Morse needs MorseNoCentrifugal or MorseWithM".into()))
        }
    }
}

/// `E = ω[2ℏ(n_r+½) + M] − (1/2m)(k/ω)²`
pub fn linear_oscillator_energy_with_m(k: f64, omega: f64, units: &UnitsContext, n_r: u32, m_action: f64) -> f64 {
    let shift = k / omega;
    oscillator_energy_with_m(omega, units, n_r, m_action) - shift * shift / (2.0 * units.mass())
}

pub fn linear_oscillator_energy(k: f64, omega: f64, units: &UnitsContext, n_r: u32, l: u32) -> f64 {
    linear_oscillator_energy_with_m(k, omega, units, n_r, angular_momentum(l, units))
}

/// A potential paired with the closed form that applies to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum {
    spec: PotentialSpec,
    variant: SpectrumVariant,
    units: UnitsContext,
}

impl ClosedFormSpectrum {
    pub fn new(spec: PotentialSpec, variant: SpectrumVariant, units: UnitsContext) -> Result<Self> {
        let is_morse = spec.kind() == PotentialKind::Morse;
        match (variant, is_morse) {
            (SpectrumVariant::Standard, false) if spec.kind() != PotentialKind::Tabulated => {}
            (SpectrumVariant::MorseNoCentrifugal | SpectrumVariant::MorseWithM, true) => {}
            (_, _) if spec.kind() == PotentialKind::Tabulated => {
                return Err(WkbError::InvalidVariant(
                    "tabulated potentials are numeric-only and have no closed form".into(),
                ))
            }
            (v, _) => {
                return Err(WkbError::InvalidVariant(format!(
                    "variant {v:?} does not apply to the {} potential",
                    spec.kind().name()
                )))
            }
        }
        Ok(Self { spec, variant, units })
    }

    /// Closed form for a potential with its default variant (Morse uses the
    /// centrifugal-term result, valid for all `l`).
    pub fn for_potential(spec: PotentialSpec, units: UnitsContext) -> Result<Self> {
        let variant =
            if spec.kind() == PotentialKind::Morse { SpectrumVariant::MorseWithM } else { SpectrumVariant::Standard };
        Self::new(spec, variant, units)
    }

    pub fn variant(&self) -> SpectrumVariant {
        self.variant
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn energy(&self, n_r: u32, l: u32) -> Result<f64> {
        self.energy_with_m(n_r, l, angular_momentum(l, &self.units))
    }

    /// Same formula with an explicit angular momentum magnitude.
    pub fn energy_with_m(&self, n_r: u32, l: u32, m_action: f64) -> Result<f64> {
        let u = &self.units;
        match self.spec {
            PotentialSpec::Coulomb { alpha } => Ok(coulomb_energy_with_m(alpha, u, n_r, m_action)),
            PotentialSpec::IsotropicOscillator { omega } => Ok(oscillator_energy_with_m(omega, u, n_r, m_action)),
            PotentialSpec::Hulthen { v0, r0 } => hulthen_energy_with_m(v0, r0, u, n_r, m_action),
            PotentialSpec::Morse { v0, alpha, r0 } => {
                morse_energy_with_m(v0, alpha, r0, u, n_r, l, m_action, self.variant)
            }
            PotentialSpec::LinearPlusOscillator { k, omega } => {
                Ok(linear_oscillator_energy_with_m(k, omega, u, n_r, m_action))
            }
            PotentialSpec::Tabulated(_) => unreachable!("rejected in constructor"),
        }
    }
}
