use num_rational::BigRational;
use thiserror::Error;

use crate::subset::SubsetMask;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {m} is out of range (1..={limit})")]
    GroundSetTooLarge { m: usize, limit: usize },

    #[error("bit pattern {bits:#b} does not fit a ground set of size {m}")]
    InvalidMask { bits: u64, m: usize },

    #[error("element {element} is not in the ground set [1..{m}]")]
    InvalidElement { element: usize, m: usize },

    #[error("dimension mismatch: expected m = {expected}, found m = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("set functions must vanish on the empty set, found f(∅) = {0}")]
    NonZeroEmptyValue(BigRational),

    #[error("no value recorded for set {0}")]
    MissingEntry(SubsetMask),

    #[error("set {0} appears more than once")]
    DuplicateEntry(SubsetMask),

    #[error("conflicting values recorded for set {set}: {first} vs {second}")]
    InconsistentLog {
        set: SubsetMask,
        first: Box<BigRational>,
        second: Box<BigRational>,
    },

    #[error("negative value {value} recorded for set {set}")]
    NegativeValue { set: SubsetMask, value: BigRational },

    #[error("element weights must be positive, found {weight} for membership {membership}")]
    NonPositiveWeight {
        membership: SubsetMask,
        weight: BigRational,
    },

    #[error("element membership must be a nonempty set")]
    EmptyMembership,

    #[error("refinement at level {level} produced negative weight {weight} for prefix {prefix}")]
    NegativeWeight {
        level: usize,
        prefix: SubsetMask,
        weight: BigRational,
    },

    #[error("refinement left weight {weight} on the empty set")]
    ResidualWeight { weight: BigRational },

    #[error("{live} live parts at level {level} exceed the support bound {limit}")]
    SupportExceeded {
        level: usize,
        live: usize,
        limit: usize,
    },

    #[error("coefficient of {set} is {value}, which does not witness non-coverage")]
    NotNegative { set: SubsetMask, value: BigRational },

    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(BigRational),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
