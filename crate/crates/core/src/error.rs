use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible order {0}: v must be 1 or 3 (mod 6)")]
    InadmissibleOrder(usize),

    #[error("point {point} out of range for order {v}")]
    PointOutOfRange { point: usize, v: usize },

    #[error("degenerate block {{{0}, {1}, {2}}}: points must be distinct")]
    DegenerateBlock(usize, usize, usize),

    #[error("{}", describe_pairs(.0))]
    PairsCoveredTwice(Vec<(usize, usize)>),

    #[error("pair {{{0},{1}}} not covered")]
    PairUncovered(usize, usize),

    #[error("block count {found} ≠ {expected}")]
    BlockCount { found: usize, expected: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("hill climbing exhausted its budget after {iterations} switch steps")]
    BudgetExhausted { iterations: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("plan bug: raw count {raw} is not divisible by Q = {q}")]
    Divisibility { raw: u64, q: u64 },

    #[error("unknown configuration `{0}`")]
    UnknownConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn describe_pairs(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(x, y)| format!("pair {{{x},{y}}} covered twice"))
        .collect::<Vec<_>>()
        .join("; ")
}
