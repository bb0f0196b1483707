use std::fmt;

/// Errors shared by the solver kernels.
///
/// Non-positive density or pressure signals breakdown of the approximation;
/// drivers are expected to abort the run and surface the failing cell and
/// time to the user.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NonPositiveDensity { rho: f64 },
    NonPositivePressure { p: f64 },
    /// Logarithmic mean of a non-positive quantity.
    NonPositiveInput { value: f64 },
    InvalidExtent { xmin: f64, xmax: f64 },
    DomainMismatch { expected: (f64, f64), got: (f64, f64) },
    GridMismatch,
    LengthMismatch { errors: usize, cells: usize },
    /// A cell left the admissible set during time integration.
    InvalidState {
        cell: usize,
        time: f64,
        source: Box<Error>,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveDensity { rho } => write!(f, "non-positive density rho={rho:e}"),
            Error::NonPositivePressure { p } => write!(f, "non-positive pressure p={p:e}"),
            Error::NonPositiveInput { value } => {
                write!(f, "logarithmic mean requires positive input, got {value:e}")
            }
            Error::InvalidExtent { xmin, xmax } => {
                write!(f, "invalid grid extent [{xmin}, {xmax}]")
            }
            Error::DomainMismatch { expected, got } => write!(
                f,
                "grid covers [{}, {}] but the problem is posed on [{}, {}]",
                got.0, got.1, expected.0, expected.1
            ),
            Error::GridMismatch => write!(f, "ledgers were computed on different grids"),
            Error::LengthMismatch { errors, cells } => write!(
                f,
                "need matching lists, got {errors} errors and {cells} cell counts"
            ),
            Error::InvalidState { cell, time, source } => {
                write!(f, "invalid state in cell {cell} at t={time:.6e}: {source}")
            }
        }
    }
}

impl std::error::Error for Error {}
