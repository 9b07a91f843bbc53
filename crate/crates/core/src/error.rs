use thiserror::Error;

/// Errors raised by validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constellation needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointDimension {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("point {index} has a non-finite coordinate")]
    NonFinitePoint { index: usize },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("expected {expected} probabilities, got {found}")]
    ProbabilityCount { expected: usize, found: usize },

    #[error("probability {index} = {value} is not in the open interval (0, 1)")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: f64 },

    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("constellation size {0} is not a power of two; labels need M = 2^m")]
    NotPowerOfTwo(usize),

    #[error("label {index} has length {found}, expected {expected}")]
    LabelLength {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("label {index} contains a character other than '0' or '1'")]
    LabelCharacter { index: usize },

    #[error("labels {first} and {second} are identical")]
    DuplicateLabel { first: usize, second: usize },

    #[error("bit error probability requires a labeling")]
    MissingLabeling,

    #[error("index {index} out of range for {size} points")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("pairwise quantity needs i != j, got i = j = {0}")]
    SameIndex(usize),

    #[error("vector has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension {required}, constellation has {found}")]
    UnsupportedDimension { required: usize, found: usize },

    #[error("noise standard deviation must be positive and finite, got {0}")]
    InvalidSigma(f64),

    #[error("lower bound not valid at this noise level: sigma = {sigma} >= tau = {tau}")]
    BoundNotValid { sigma: f64, tau: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
