use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate mode label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown mode label `{0}`")]
    UnknownLabel(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("density operator trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("density operator is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "Fock cutoff would exceed the cap of {cap} (gamma = {gamma}, tol = {tol:e}); \
         raise the cap or lower the temperature"
    )]
    CutoffCapExceeded { gamma: f64, tol: f64, cap: usize },

    #[error(
        "monogamy violated for pivot {pivot}: one-tangle {one_tangle}, two-tangles \
         {two_tangles:?}, residual {residual:e}"
    )]
    MonogamyViolation {
        pivot: String,
        one_tangle: f64,
        two_tangles: [f64; 2],
        residual: f64,
    },

    #[error(
        "closed form disagrees with numeric value for {measure} [{partition}]: \
         numeric {numeric}, closed form {closed_form} (|diff| = {:e})",
        (numeric - closed_form).abs()
    )]
    ClosedFormMismatch {
        measure: String,
        partition: String,
        numeric: f64,
        closed_form: f64,
    },

    #[error("at T = {temperature}: {source}")]
    AtTemperature {
        temperature: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the numerics (monogamy violation, cutoff cap,
    /// oracle disagreement) as opposed to rejected input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::CutoffCapExceeded { .. }
            | Error::MonogamyViolation { .. }
            | Error::ClosedFormMismatch { .. } => true,
            Error::AtTemperature { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
