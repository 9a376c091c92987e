use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("lattices span different subspaces")]
    SpanMismatch,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("singular matrix")]
    Singular,
    #[error("level {0} is congruent to 2 mod 4; use level {half} instead", half = .0 / 2)]
    InvalidLevel(u64),
    #[error("degree {0} outside the range [{1}, 0]")]
    DegreeOutOfRange(i32, i32),
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i32),
    #[error("group is infinite: {0}")]
    InfiniteGroup(String),
    #[error("group is not free: {0}")]
    NotFree(String),
    #[error("trivial character has no B_1 value")]
    TrivialCharacter,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("cell ({p},{q}) needs q range up to {required}")]
    Truncation { p: i32, q: i32, required: i32 },
    #[error("result is not integral: {0}")]
    NonIntegral(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("preimage of {0} leaves level {1}")]
    PreimageOutsideLevel(String, u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
