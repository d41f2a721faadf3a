//! Units, quantum numbers and the central potentials.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WkbError};

/// Values of ℏ and the particle mass carried through every formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitsContext {
    hbar: f64,
    mass: f64,
}

impl UnitsContext {
    /// ℏ = m = 1.
    pub const NATURAL: Self = Self { hbar: 1.0, mass: 1.0 };

    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(WkbError::domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(WkbError::domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    #[inline]
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    #[inline]
    pub fn mass(&self) -> f64 {
        self.mass
    }
}

impl Default for UnitsContext {
    fn default() -> Self {
        Self::NATURAL
    }
}

/// Radial node count, orbital and magnetic quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n_r: u32,
    l: u32,
    m_z: i32,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, l: u32, m_z: i32) -> Result<Self> {
        if m_z.unsigned_abs() > l {
            return Err(WkbError::InvalidQuantumNumbers(format!("|m_z| = {} exceeds l = {l}", m_z.unsigned_abs())));
        }
        Ok(Self { n_r, l, m_z })
    }

    /// `m_z = 0`, which is always valid.
    pub fn radial(n_r: u32, l: u32) -> Self {
        Self { n_r, l, m_z: 0 }
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m_z(&self) -> i32 {
        self.m_z
    }

    /// Polar node count `n_θ = l − |m_z|`.
    pub fn n_theta(&self) -> u32 {
        self.l - self.m_z.unsigned_abs()
    }
}

/// Which closed-form potential family a [`PotentialSpec`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Coulomb,
    IsotropicOscillator,
    Hulthen,
    Morse,
    LinearPlusOscillator,
    Tabulated,
}

impl PotentialKind {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::IsotropicOscillator => "oscillator",
            PotentialKind::Hulthen => "hulthen",
            PotentialKind::Morse => "morse",
            PotentialKind::LinearPlusOscillator => "linear-oscillator",
            PotentialKind::Tabulated => "tabulated",
        }
    }
}

/// A central potential together with its physical parameters.
///
/// Oscillator-type terms carry the mass, `V = m ω² r² / 2`, so the mass
/// enters through [`PotentialSpec::value`]'s `units` argument.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// `V = −α / r`
    Coulomb { alpha: f64 },
    /// `V = m ω² r² / 2`
    IsotropicOscillator { omega: f64 },
    /// `V = −V₀ e^{−r/r₀} / (1 − e^{−r/r₀})`
    Hulthen { v0: f64, r0: f64 },
    /// `V = V₀ [e^{−2α(r/r₀−1)} − 2 e^{−α(r/r₀−1)}]`
    Morse { v0: f64, alpha: f64, r0: f64 },
    /// `V = k r + m ω² r² / 2`
    LinearPlusOscillator { k: f64, omega: f64 },
    /// User samples with monotone cubic interpolation. Numeric-only: there
    /// is no closed-form spectrum.
    Tabulated(TabulatedPotential),
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(WkbError::domain(format!("parameter {name} must be positive, got {v}")))
    }
}

impl PotentialSpec {
    pub fn coulomb(alpha: f64) -> Result<Self> {
        Ok(Self::Coulomb { alpha: positive("alpha", alpha)? })
    }

    pub fn oscillator(omega: f64) -> Result<Self> {
        Ok(Self::IsotropicOscillator { omega: positive("omega", omega)? })
    }

    pub fn hulthen(v0: f64, r0: f64) -> Result<Self> {
        Ok(Self::Hulthen { v0: positive("v0", v0)?, r0: positive("r0", r0)? })
    }

    pub fn morse(v0: f64, alpha: f64, r0: f64) -> Result<Self> {
        Ok(Self::Morse { v0: positive("v0", v0)?, alpha: positive("morse_alpha", alpha)?, r0: positive("r0", r0)? })
    }

    pub fn linear_plus_oscillator(k: f64, omega: f64) -> Result<Self> {
        Ok(Self::LinearPlusOscillator { k: positive("k", k)?, omega: positive("omega", omega)? })
    }

    pub fn tabulated(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        Ok(Self::Tabulated(TabulatedPotential::new(r, v)?))
    }

    pub fn kind(&self) -> PotentialKind {
        match self {
            Self::Coulomb { .. } => PotentialKind::Coulomb,
            Self::IsotropicOscillator { .. } => PotentialKind::IsotropicOscillator,
            Self::Hulthen { .. } => PotentialKind::Hulthen,
            Self::Morse { .. } => PotentialKind::Morse,
            Self::LinearPlusOscillator { .. } => PotentialKind::LinearPlusOscillator,
            Self::Tabulated(_) => PotentialKind::Tabulated,
        }
    }

    /// True when the formula continues analytically to `r ≤ 0`, which the
    /// multi-well quantizer needs.
    pub fn supports_signed_domain(&self) -> bool {
        matches!(self, Self::IsotropicOscillator { .. } | Self::LinearPlusOscillator { .. } | Self::Morse { .. })
    }

    /// Potentials the multi-well quantizer accepts from the CLI.
    pub fn multiwell_capable(&self) -> bool {
        matches!(self, Self::IsotropicOscillator { .. } | Self::LinearPlusOscillator { .. })
    }

    /// Value of the potential at infinity, if it is finite (the
    /// dissociation threshold).
    pub fn asymptote(&self) -> Option<f64> {
        match self {
            Self::Coulomb { .. } | Self::Hulthen { .. } | Self::Morse { .. } => Some(0.0),
            Self::IsotropicOscillator { .. } | Self::LinearPlusOscillator { .. } => None,
            Self::Tabulated(t) => Some(*t.v.last().expect("non-empty table")),
        }
    }

    /// Natural length of the problem, used to size turning-point scans.
    pub fn length_scale(&self, units: &UnitsContext) -> f64 {
        let (hbar, m) = (units.hbar(), units.mass());
        match self {
            Self::Coulomb { alpha } => hbar * hbar / (m * alpha),
            Self::IsotropicOscillator { omega } | Self::LinearPlusOscillator { omega, .. } => {
                (hbar / (m * omega)).sqrt()
            }
            Self::Hulthen { v0, r0 } => r0.min(hbar * hbar / (m * v0 * r0)),
            Self::Morse { alpha, r0, .. } => r0.min(r0 / alpha),
            Self::Tabulated(t) => t.r[t.r.len() - 1] - t.r[0],
        }
    }

    /// Range of `r` over which the potential is defined (`(0, ∞)` for the
    /// closed forms).
    pub fn radial_support(&self) -> (f64, f64) {
        match self {
            Self::Tabulated(t) => (t.r[0], t.r[t.r.len() - 1]),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// `V(r)` for `r > 0`.
    pub fn value(&self, r: f64, units: &UnitsContext) -> Result<f64> {
        if !(r > 0.0) {
            return Err(WkbError::domain(format!("potential evaluated at r = {r} <= 0")));
        }
        self.value_continued(r, units)
    }

    /// `V(r)` continued to the whole real line for the kinds that allow it;
    /// other kinds require `r > 0`.
    pub fn value_continued(&self, r: f64, units: &UnitsContext) -> Result<f64> {
        if r <= 0.0 && !(self.supports_signed_domain() && r.is_finite()) {
            return Err(WkbError::domain(format!("{} potential is not defined at r = {r}", self.kind().name())));
        }
        let m = units.mass();
        let v = match self {
            Self::Coulomb { alpha } => -alpha / r,
            Self::IsotropicOscillator { omega } => 0.5 * m * omega * omega * r * r,
            Self::Hulthen { v0, r0 } => {
                let x = r / r0;
                // e^{-x}/(1-e^{-x}) = 1/expm1(x), exact near the origin.
                -v0 / x.exp_m1()
            }
            Self::Morse { v0, alpha, r0 } => {
                let e = (-alpha * (r / r0 - 1.0)).exp();
                v0 * (e * e - 2.0 * e)
            }
            Self::LinearPlusOscillator { k, omega } => k * r + 0.5 * m * omega * omega * r * r,
            Self::Tabulated(t) => t.eval(r)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(WkbError::domain(format!("{} potential is not finite at r = {r}", self.kind().name())))
        }
    }
}

/// `V(r)` for the given spec; see [`PotentialSpec::value`].
pub fn evaluate_potential(spec: &PotentialSpec, r: f64, units: &UnitsContext) -> Result<f64> {
    spec.value(r, units)
}

/// Squared radial momentum `2m(E − V) − M²/r²` for `r > 0`.
pub fn effective_p2(spec: &PotentialSpec, m2: f64, energy: f64, units: &UnitsContext, r: f64) -> Result<f64> {
    let v = spec.value(r, units)?;
    Ok(2.0 * units.mass() * (energy - v) - m2 / (r * r))
}

/// The squared radial momentum at fixed potential, `M²` and energy.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveMomentumSquared<'a> {
    pub potential: &'a PotentialSpec,
    pub m2: f64,
    pub energy: f64,
    pub units: UnitsContext,
}

impl<'a> EffectiveMomentumSquared<'a> {
    pub fn new(potential: &'a PotentialSpec, m2: f64, energy: f64, units: UnitsContext) -> Self {
        Self { potential, m2, energy, units }
    }

    /// Value at `r > 0`.
    pub fn value(&self, r: f64) -> Result<f64> {
        effective_p2(self.potential, self.m2, self.energy, &self.units, r)
    }

    /// Value anywhere on the real line where the potential continues; at
    /// `r = 0` with `M² > 0` this is `−∞`.
    pub fn value_signed(&self, r: f64) -> Result<f64> {
        if r == 0.0 && self.m2 > 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let v = self.potential.value_continued(r, &self.units)?;
        let centrifugal = if self.m2 == 0.0 { 0.0 } else { self.m2 / (r * r) };
        Ok(2.0 * self.units.mass() * (self.energy - v) - centrifugal)
    }
}

/// Monotone cubic (Fritsch–Carlson) interpolant through `(r, V)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    r: Vec<f64>,
    v: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 3 {
            return Err(WkbError::domain("tabulated potential needs >= 3 (r, V) pairs of equal length"));
        }
        if r[0] <= 0.0 || r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(WkbError::domain("tabulated r must be positive and strictly increasing"));
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) {
            return Err(WkbError::domain("tabulated potential contains non-finite samples"));
        }
        let n = r.len();
        let secants: Vec<f64> = (0..n - 1).map(|i| (v[i + 1] - v[i]) / (r[i + 1] - r[i])).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (secants[i - 1], secants[i]);
            slopes[i] = if a * b <= 0.0 {
                0.0
            } else {
                // weighted harmonic mean (Fritsch–Butland), keeps monotonicity
                let h0 = r[i] - r[i - 1];
                let h1 = r[i + 1] - r[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / a + w2 / b)
            };
        }
        Ok(Self { r, v, slopes })
    }

    pub fn samples(&self) -> (&[f64], &[f64]) {
        (&self.r, &self.v)
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let n = self.r.len();
        if x < self.r[0] || x > self.r[n - 1] {
            return Err(WkbError::domain(format!(
                "r = {x} outside tabulated range [{}, {}]",
                self.r[0],
                self.r[n - 1]
            )));
        }
        let i = match self.r.partition_point(|&ri| ri <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.r[i + 1] - self.r[i];
        let t = (x - self.r[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * self.v[i] + h10 * h * self.slopes[i] + h01 * self.v[i + 1] + h11 * h * self.slopes[i + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn units() -> UnitsContext {
        UnitsContext::default()
    }

    #[test]
    fn default_units_are_one() {
        let u = UnitsContext::default();
        assert_eq!((u.hbar(), u.mass()), (1.0, 1.0));
        assert!(UnitsContext::new(0.0, 1.0).is_err());
        assert!(UnitsContext::new(1.0, -2.0).is_err());
    }

    #[test]
    fn quantum_number_constraint() {
        assert!(QuantumNumbers::new(0, 1, 2).is_err());
        let q = QuantumNumbers::new(3, 4, -2).unwrap();
        assert_eq!(q.n_theta(), 2);
    }

    #[test]
    fn potential_values() {
        let u = units();
        assert_eq!(PotentialSpec::coulomb(1.0).unwrap().value(2.0, &u).unwrap(), -0.5);
        let morse = PotentialSpec::morse(1.0, 1.0, 1.0).unwrap();
        assert_eq!(morse.value(1.0, &u).unwrap(), -1.0);
        let hul = PotentialSpec::hulthen(1.0, 1.0).unwrap();
        let r = 1e-8;
        let ratio = hul.value(r, &u).unwrap() / (-1.0 / r);
        assert!((ratio - 1.0).abs() < 1e-6, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_parameters_and_radii() {
        assert!(PotentialSpec::coulomb(0.0).is_err());
        assert!(PotentialSpec::morse(1.0, -1.0, 1.0).is_err());
        let c = PotentialSpec::coulomb(1.0).unwrap();
        assert!(c.value(0.0, &units()).is_err());
        assert!(c.value_continued(-1.0, &units()).is_err());
        let osc = PotentialSpec::oscillator(1.0).unwrap();
        assert_eq!(osc.value_continued(-2.0, &units()).unwrap(), 2.0);
        let huge = PotentialSpec::morse(1e308, 1.0, 1.0).unwrap();
        assert!(matches!(huge.value(1e-3, &units()), Err(WkbError::Domain(_))));
    }

    #[test]
    fn effective_p2_examples() {
        let u = units();
        let osc = PotentialSpec::oscillator(1.0).unwrap();
        assert_relative_eq!(effective_p2(&osc, 0.25, 1.5, &u, 1.0).unwrap(), 1.75);
        let c = PotentialSpec::coulomb(1.0).unwrap();
        assert_relative_eq!(effective_p2(&c, 0.25, -0.5, &u, 1.0).unwrap(), 0.75);
        for spec in [osc, c, PotentialSpec::hulthen(1.0, 1.0).unwrap()] {
            assert!(effective_p2(&spec, 0.25, 0.0, &u, 1e-9).unwrap() < -1e17);
        }
    }

    #[test]
    fn hulthen_tends_to_coulomb() {
        let u = units();
        let r0 = 1e4;
        let h = PotentialSpec::hulthen(1.0 / r0, r0).unwrap();
        let c = PotentialSpec::coulomb(1.0).unwrap();
        let d = (h.value(1.0, &u).unwrap() - c.value(1.0, &u).unwrap()).abs();
        assert!(d < 1e-4, "{d}");
    }

    #[test]
    fn tabulated_reproduces_samples_and_is_monotone() {
        let r: Vec<f64> = (1..=20).map(|i| i as f64 * 0.5).collect();
        let v: Vec<f64> = r.iter().map(|x| -1.0 / x).collect();
        let t = PotentialSpec::tabulated(r.clone(), v.clone()).unwrap();
        for (ri, vi) in r.iter().zip(&v) {
            assert_relative_eq!(t.value(*ri, &units()).unwrap(), *vi, epsilon = 1e-14);
        }
        let mut prev = f64::NEG_INFINITY;
        let mut x = 0.5;
        while x <= 10.0 {
            let y = t.value(x, &units()).unwrap();
            assert!(y >= prev);
            prev = y;
            x += 0.01;
        }
        assert!(t.value(20.0, &units()).is_err());
    }
}
