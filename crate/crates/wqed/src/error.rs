//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building grids, scattering pulses or
/// running the command-line harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation was handed a value outside its domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two amplitudes that must share a frequency grid do not.
    #[error("frequency grids do not match")]
    GridMismatch,

    /// A quadrature, resampling or refinement test exceeded its tolerance.
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    /// A lattice configuration cannot hold the requested pulse.
    #[error("lattice configuration invalid: {0}")]
    ConfigInvalid(String),

    /// A run configuration file or flag set is malformed.
    #[error("configuration error: {0}")]
    BadConfig(String),

    /// Momentum extraction was attempted before the field cleared the emitter.
    #[error("extraction window violated: {0}")]
    ExtractionWindow(String),

    /// A modal operation referenced a mode that was never declared.
    #[error("unknown mode {0}")]
    UnknownMode(u8),

    /// A two-excitation lattice would exceed the configured memory cap.
    #[error("memory guard: {0}")]
    MemoryGuard(String),

    /// Closed-form/oracle disagreement above the validation threshold.
    #[error("validation failure: {0}")]
    ValidationFailure(String),

    /// File I/O problems in the harness.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the `wqed` binary for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::BadConfig(_) => 2,
            Error::ConvergenceFailure(_)
            | Error::ValidationFailure(_)
            | Error::ConfigInvalid(_)
            | Error::ExtractionWindow(_)
            | Error::MemoryGuard(_)
            | Error::GridMismatch
            | Error::UnknownMode(_) => 3,
            Error::Io(_) => 4,
        }
    }
}
