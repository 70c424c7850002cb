use thiserror::Error;

/// Errors raised while validating inputs or running constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a score sequence needs at least 2 players, got {len}")]
    InputTooShort { len: usize },

    #[error("score at position {index} is negative ({value})")]
    NegativeScore { index: usize, value: i64 },

    #[error("scores must be nondecreasing (position {index})")]
    NotSorted { index: usize },

    #[error("{what} {value} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: i64,
        limit: i64,
    },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("matrix entry ({row}, {col}) is negative ({value})")]
    NegativeEntry { row: usize, col: usize, value: i64 },

    #[error("matrix diagonal entry ({index}, {index}) is {value}, expected 0")]
    NonzeroDiagonal { index: usize, value: i64 },

    #[error("matrix has {matrix} players but the score sequence has {scores}")]
    ShapeMismatch { matrix: usize, scores: usize },

    #[error("invalid interval: need 0 <= a <= b, got a = {a}, b = {b}")]
    InvalidInterval { a: i64, b: i64 },

    #[error("provisional prefix of {k} players is not realizable: {reason}")]
    InfeasiblePrefix { k: usize, reason: &'static str },

    #[error("oracle budget exceeded: {cost} pair-states against a budget of {budget}")]
    OracleBudgetExceeded { cost: u64, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
