use thiserror::Error;

/// Errors reported by the library.
///
/// The four classes map onto the CLI exit contract: `InvalidInput` and
/// `Domain` are caller mistakes (exit 1), `Capacity` and `Numerical` are
/// runtime failures (exit 2).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed data: unordered breakpoints, non-finite values, zero
    /// weights, empty inputs where content is required.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Structurally valid data outside an operation's domain, e.g. time
    /// reversal of a function without compact support.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured cap would be exceeded (enumeration size, spectrum
    /// scan length).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An iterative scheme failed to converge within its budget.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Domain(_) => "domain",
            Error::Capacity(_) => "capacity",
            Error::Numerical(_) => "numerical",
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Domain(_) => 1,
            Error::Capacity(_) | Error::Numerical(_) => 2,
        }
    }
}
