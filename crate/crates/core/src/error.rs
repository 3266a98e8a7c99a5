use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown letter {0:?} in word")]
    UnknownLetter(char),
    #[error("generator {index} exceeds rank {rank}")]
    LetterBeyondRank { index: usize, rank: usize },
    #[error("malformed exponent token {0:?}")]
    MalformedExponent(String),
    #[error("rank must be in 1..=26, got {0}")]
    InvalidRank(usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("probability p must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(f64),
    #[error("word list must be nonempty")]
    EmptyWordList,
    #[error("duplicate word {0} in word list")]
    DuplicateWord(String),
    #[error("cholesky factorization failed even with jitter {0:e}")]
    FactorizationFailed(f64),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("profile pair ({0}, {1}) is not supported by the {2} system")]
    Unsupported(String, String, String),
    #[error("profile {0} is not an indicator of a finite-measure set")]
    NotIndicator(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("vector is not a unit vector (norm {0})")]
    NotUnitVector(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
