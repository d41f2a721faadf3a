use thiserror::Error;

pub type Result<T, E = WkbError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WkbError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("no classically allowed region at E = {energy}")]
    NoAllowedRegion { energy: f64 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("{operation}: quadrature did not converge by order {order}")]
    QuadratureFailure { operation: &'static str, order: usize },

    #[error("{operation}: root finding did not converge ({detail})")]
    RootNotConverged { operation: &'static str, detail: String },

    #[error("turning structure mismatch: expected {expected} classically allowed intervals, found {found}")]
    StructureMismatch { expected: usize, found: usize },

    #[error("r = {r} lies within {delta} of a turning point")]
    TurningPointProximity { r: f64, delta: f64 },

    #[error("sample undersampled near r = {r}: spacing {spacing} exceeds 1/32 of local wavelength {wavelength}")]
    Undersampled { r: f64, spacing: f64, wavelength: f64 },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("invalid spectrum variant: {0}")]
    InvalidVariant(String),

    #[error("oracle grid too small: eigenfunction {level} does not decay at r_max = {r_max}")]
    DomainTooSmall { level: usize, r_max: f64 },
}

impl WkbError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WkbError::Domain(msg.into())
    }
}
