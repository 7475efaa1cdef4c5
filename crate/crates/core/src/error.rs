use thiserror::Error;

/// Errors produced by graph construction, analysis, numerics and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A call received arguments outside its domain (bad vertex, empty set, shape mismatch).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A graph family was requested with parameters outside its validity range.
    #[error("invalid parameters for family `{family}`: {constraint}")]
    ParameterRange {
        family: &'static str,
        constraint: String,
    },

    /// A mathematical precondition failed (zero pivot, negative entry for a plain power, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The graph is not chordal; `cycle` is a chordless cycle of length at
    /// least four (0-based labels, shown 1-based).
    #[error("graph is not chordal: chordless cycle {}", one_based(cycle))]
    NotChordal { cycle: Vec<usize> },

    /// An exponential-time search was asked to run above the configured vertex cap.
    #[error("graph has {n} vertices, above the vertex cap of {cap}")]
    Capacity { n: usize, cap: usize },

    /// Malformed input text.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input that violates a structural rule (duplicate edge, asymmetric matrix).
    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn one_based(vs: &[usize]) -> String {
    let labels: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("[{}]", labels.join(", "))
}

pub(crate) fn arg(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
