//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Segments overlap, are reversed, or are out of order after sorting.
    #[error("invalid segments: {0}")]
    Overlap(String),

    /// The scale collapses to a single point (a = b).
    #[error("degenerate time scale: single point {0}")]
    DegenerateScale(f64),

    /// A queried time is not a member of the time scale.
    #[error("t = {0} is not in the time scale")]
    NotInScale(f64),

    /// Mesh or operator size exceeds the configured cap.
    #[error("resolution cap exceeded: {requested} nodes (cap {cap})")]
    Resolution { requested: usize, cap: usize },

    /// A range endpoint is not a mesh node.
    #[error("t = {0} is not a mesh node")]
    NotANode(f64),

    /// An L^p exponent below 1 was requested.
    #[error("L^p exponent must satisfy p >= 1, got {0}")]
    BadExponent(f64),

    /// A parameter is outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The literal kernel sample (t - sigma(s))^(alpha-1) diverges: the cell
    /// ending at the evaluation node has sigma(s) = t and alpha < 1.
    #[error(
        "singular kernel: cell [{cell_left}, {node}) has successor equal to the \
         evaluation node and alpha = {alpha} < 1"
    )]
    SingularKernel {
        node: f64,
        cell_left: f64,
        alpha: f64,
    },

    /// Ray doubling never reached nonpositive energy; the nonlinearity is not
    /// superlinear enough for a mountain-pass endpoint.
    #[error("no mountain-pass endpoint found after {doublings} doublings (last energy {energy})")]
    EndpointNotFound { doublings: usize, energy: f64 },

    /// Armijo backtracking exhausted its budget without descent.
    #[error("line search failed after {backtracks} backtracks at iteration {iteration}")]
    LineSearchFailure { iteration: usize, backtracks: usize },

    /// Configuration parse or validation failure.
    #[error("config error: {0}")]
    Schema(String),

    /// Filesystem failure while writing outputs.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
