use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("Hermitian eigendecomposition did not converge (dim {0})")]
    EigenFailure(usize),

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, allowed {allowed:.3e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("matrix is not a projector: {0}")]
    NotProjector(String),

    #[error("observables {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("observable is not contained in device type `{0}`")]
    NotInSubalgebra(String),

    #[error("unknown device type `{0}`")]
    UnknownDeviceType(String),

    #[error("duplicate device type `{0}`")]
    DuplicateDeviceType(String),

    #[error("invalid device type: {0}")]
    InvalidDeviceType(String),

    #[error("invalid elementary state: {0}")]
    InvalidElementaryState(String),

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("observable is not dichotomic (spectrum not within {{-1, 1}})")]
    NotDichotomic,

    #[error("conditioning event has zero probability ({0:.3e})")]
    ZeroProbability(f64),

    #[error("invalid correlations: {0}")]
    InvalidCorrelations(String),

    #[error("invalid interval union: {0}")]
    InvalidInterval(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
