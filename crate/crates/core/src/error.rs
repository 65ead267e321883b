use thiserror::Error;

/// Errors raised by the solver kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive density {rho}")]
    NonPositiveDensity { rho: f64 },

    #[error("non-positive pressure {p}")]
    NonPositivePressure { p: f64 },

    #[error("imaginary sound speed (c^2 = {c2})")]
    ImaginarySoundSpeed { c2: f64 },

    #[error("degenerate wave fan: s_K == s* == {speed}")]
    DegenerateWaveFan { speed: f64 },

    #[error("reconstruction window needs {expected} cells, got {got}")]
    WindowTooSmall { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unphysical state at cell ({i}, {j}) during step {step}: {source}")]
    UnphysicalState {
        i: usize,
        j: usize,
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed dump: {0}")]
    MalformedDump(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
