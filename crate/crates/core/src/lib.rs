//! Semiclassical (WKB) bound-state spectra for central potentials.
//!
//! The centrifugal coefficient of the radial problem comes from
//! quantizing the angular motion with the same leading-order WKB rule,
//! giving `M² = (l + ½)²ℏ²` for every potential. Energies are then found by
//! root-finding the radial phase-space integral, either for a single
//! classically allowed interval or summed over several with a Maslov
//! offset. Closed-form spectra and a finite-difference reference solver
//! are provided for cross-checking.

pub mod angular;
pub mod error;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod quantizer;
pub mod spectra;
pub mod wavefunction;

pub use angular::{angular_momentum, langer_m2, AngularEigenvalue};
pub use error::{Result, WkbError};
pub use oracle::{
    compare_methods, diagonalize_bound, diagonalize_radial, CentrifugalVariant, ComparisonRow, OracleResult,
    RadialGrid, Spacing,
};
pub use potential::{
    effective_p2, evaluate_potential, EffectiveMomentumSquared, PotentialKind, PotentialSpec, QuantumNumbers,
    TabulatedPotential, UnitsContext,
};
pub use quantizer::{EnergyLevel, Method, Quantizer, SearchDomain, Tolerances, TurningStructure};
pub use spectra::{ClosedFormSpectrum, SpectrumVariant};
pub use wavefunction::{count_nodes, normalize_on_interval, WaveForm, WavefunctionSample};
