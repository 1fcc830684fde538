use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("symbol {symbol:?} occurs {found} times, expected {expected}")]
    UnequalMultiplicity {
        symbol: String,
        found: usize,
        expected: usize,
    },
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("edges intersect")]
    IntersectingEdges,
    #[error("edges have different ranks ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("edge index {index} out of range for matching of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("edge index {0} appears twice on one side")]
    DuplicateIndex(usize),
    #[error("twins overlap at edge {0}")]
    NotDisjoint(usize),
    #[error("twins have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("sub-matchings are not isomorphic ({left} vs {right})")]
    NotIsomorphic { left: String, right: String },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a full matching on [1, rn]")]
    NotFull,
    #[error("need at least 3 points with positive statistic, got {0}")]
    TooFewPoints(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
