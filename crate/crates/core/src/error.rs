use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DunklError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported root system family/dimension combination: {0}")]
    UnsupportedFamily(String),
    #[error("negative multiplicity {0}")]
    NegativeMultiplicity(f64),
    #[error("expected {expected} multiplicities, got {got}")]
    MultiplicityCount { expected: usize, got: usize },
    #[error("root system validation failed: {0}")]
    InvalidRootSystem(String),
    #[error("group closure exceeded the cap of {0} elements")]
    GroupCapExceeded(usize),
    #[error("evaluation produced a non-finite value at {0}")]
    Evaluation(String),
    #[error("non-integrable origin singularity: {0}")]
    NonIntegrable(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("unexpected parameter `{0}`")]
    ExtraParameter(String),
    #[error("function class mismatch: {0}")]
    ClassMismatch(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("low-frequency mass {mass:.3e} exceeds threshold {threshold:.3e}")]
    LowFrequencyMass { mass: f64, threshold: f64 },
    #[error("series cap of {cap} terms reached with tail {tail:.3e}")]
    SeriesCap { cap: usize, tail: f64 },
    #[error("Picard iteration diverged at epsilon = {epsilon}")]
    Divergence { epsilon: f64 },
}

pub type Result<T> = std::result::Result<T, DunklError>;
