use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ZeroState: all coefficients vanish")]
    ZeroState,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("RootFindingFailed: residual {residual:.3e} exceeds tolerance")]
    RootFindingFailed { residual: f64 },
    #[error("NotUnitary: deviation {0:.3e}")]
    NotUnitary(f64),
    #[error("NotPositive: state has a coefficient that is not real-nonnegative")]
    NotPositive,
    #[error("EmptyCppSet")]
    EmptyCppSet,
    #[error("DegenerateQuadruple: two of the four points coincide")]
    DegenerateQuadruple,
    #[error("DegenerateTriple: two of the three points coincide")]
    DegenerateTriple,
    #[error("WrongDiversity: expected 4 distinct Majorana points, found {0}")]
    WrongDiversity(usize),
    #[error("OutOfRange: {0}")]
    OutOfRange(String),
    #[error("CoincidentPoints: points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("OutOfSupport: theta {0} outside the support of the distribution")]
    OutOfSupport(f64),
    #[error("UnknownName: {0}")]
    UnknownName(String),
    #[error("MissingParameter: {0}")]
    MissingParameter(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Errors caused by bad user input rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::RootFindingFailed { .. } | Error::EmptyCppSet)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
