use thiserror::Error;

/// Reasons a `(mu; nu, eps)` triple fails to be a signed quasibipartition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqError {
    #[error("sign sequence has length {got}, expected one sign per row ({rows})")]
    Malformed { rows: usize, got: usize },
    #[error("{side} is not a quasipartition")]
    NotQuasipartition { side: &'static str },
    #[error("mu + nu is not a partition")]
    SumNotPartition,
    #[error("signed partition ordering violated between rows {upper} and {lower}")]
    SignedOrderViolated { upper: usize, lower: usize },
    #[error("row {row} must carry a forced '{expected}' sign")]
    ForcedSignContradicted { row: usize, expected: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid signed quasibipartition: {0}")]
    InvalidSq(#[from] SqError),
    #[error("invalid signed partition: {0}")]
    InvalidSignedPartition(String),
    #[error("signature mismatch: expected ({expected_plus},{expected_minus}), found ({plus},{minus})")]
    SignatureMismatch {
        expected_plus: usize,
        expected_minus: usize,
        plus: usize,
        minus: usize,
    },
    #[error("move is not a covering move of the given bipartition")]
    MoveNotApplicable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("generic chain construction failed: u_{index} does not lie in the next subspace down")]
    ChainMembership { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
