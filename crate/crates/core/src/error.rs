use thiserror::Error;

/// Crate-wide result type.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors surfaced by the solver library. None of these are swallowed
/// internally; every numerical failure propagates to the caller.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violated a mathematical precondition.
    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    /// The hypergeometric series hit its term cap without an acceptably
    /// small last term. `partial` carries the truncated sum for diagnostics.
    #[error("2F1 series did not converge after {terms} terms (partial sum {partial:e})")]
    SeriesNonConvergence { partial: f64, terms: usize },

    /// The symmetric tridiagonal eigensolve behind Golub-Welsch failed.
    #[error("symmetric eigensolve failed to converge for a {size}-point rule")]
    EigenNonConvergence { size: usize },

    /// A quadrature rule came out structurally invalid (node outside (0,1),
    /// non-positive weight, or unordered nodes).
    #[error("invalid quadrature rule ({a}, {b}, n={n}): {message}")]
    InvalidRule {
        a: f64,
        b: f64,
        n: usize,
        message: String,
    },

    /// An integrand produced a non-finite value at a quadrature node.
    #[error("non-finite sample value at x = {x}")]
    NonFiniteSample { x: f64 },

    /// The degree-0 projection of 1/K degenerated; K is not a valid
    /// diffusivity.
    #[error("degenerate denominator in the solvability constant: f_{{2,0}} = {value:e}")]
    DegenerateSolvability { value: f64 },

    /// Invalid run configuration (bad flag value, missing problem, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Output file could not be written.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }
}
