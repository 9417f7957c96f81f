use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spin {0:?}: expected a positive half-integer such as \"1/2\", \"1\" or \"5/2\"")]
    InvalidSpin(String),
    #[error("spin must be at least 1/2")]
    ZeroSpin,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("site {site} out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("coupling must be positive, got {0}")]
    NonPositiveCoupling(f64),
    #[error("chain must have an even number of sites >= 2, got {0}")]
    InvalidSiteCount(usize),
    #[error("Hilbert-space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("sites {0} and {1} are not a bond of this chain")]
    NotABond(usize, usize),
    #[error("cannot convert {from} to {to}")]
    UnsupportedConversion { from: String, to: String },
    #[error("susceptibility conversion needs g-factor, temperature and site count")]
    MissingContext,
    #[error("no sign change of G1 + S/2 in [{lo}, {hi}] K")]
    NoCrossing { lo: f64, hi: f64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("temperatures not strictly increasing: {prev} then {next}")]
    Unordered { prev: f64, next: f64 },
    #[error("need at least {needed} points for a fit, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("unsupported spin {0} for the printed correlator (only 1/2 and 1)")]
    UnsupportedPrintedSpin(String),
}

pub type Result<T> = std::result::Result<T, Error>;
