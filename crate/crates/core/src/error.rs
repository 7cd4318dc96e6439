use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undeclared letter {0}")]
    UndeclaredLetter(String),
    #[error("state index {index} out of range (states {states})")]
    StateOutOfRange { index: usize, states: usize },
    #[error("missing `{0}` line")]
    MissingLine(&'static str),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("sigma map does not cover letter {0}")]
    SigmaIncomplete(String),
    #[error("sigma maps disagree on letter {0}")]
    SigmaMismatch(String),
    #[error("reduction undefined for capacity 0; it is the identity case")]
    ZeroCapacityReduction,
    #[error("unbounded capacity is not supported; only finite capacities are decidable")]
    UnboundedCapacity,
    #[error("input and output alphabets overlap on {0}")]
    OverlappingAlphabets(String),
    #[error("epsilon/epsilon transitions unsupported")]
    EpsilonTransition,
    #[error("transducer is not normalised")]
    NotNormalised,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
