use std::fmt;

use wkb_core::WkbError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNBOUND: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    /// Core error with a prefix locating it (row, method).
    pub fn from_core(context: &str, e: &WkbError) -> Self {
        let message = if context.is_empty() { e.to_string() } else { format!("{context}: {e}") };
        Self { code: exit_code(e), message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<WkbError> for CliError {
    fn from(e: WkbError) -> Self {
        Self::from_core("", &e)
    }
}

pub fn exit_code(e: &WkbError) -> i32 {
    match e {
        WkbError::Domain(_) | WkbError::InvalidQuantumNumbers(_) | WkbError::InvalidVariant(_) => EXIT_USAGE,
        WkbError::NoBoundState(_) | WkbError::NoAllowedRegion { .. } => EXIT_UNBOUND,
        WkbError::QuadratureFailure { .. }
        | WkbError::RootNotConverged { .. }
        | WkbError::StructureMismatch { .. }
        | WkbError::TurningPointProximity { .. }
        | WkbError::Undersampled { .. }
        | WkbError::DegenerateSample(_)
        | WkbError::DomainTooSmall { .. } => EXIT_CONVERGENCE,
    }
}
