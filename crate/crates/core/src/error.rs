use num::BigInt;
use thiserror::Error;

/// Errors reported by fallible operations across the crate.
///
/// Every message carries the offending values so that a failing call can be
/// replayed verbatim; all inputs are exact integers or rationals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter A must be nonnegative, got {0}")]
    NegativeParameter(BigInt),

    #[error("column parameters must be pairwise distinct, {0} repeats")]
    DuplicateParameter(BigInt),

    #[error("column parameter {value} outside the valid range [1, {max}]")]
    ParameterOutOfRange { value: BigInt, max: BigInt },

    #[error("need at least one column parameter")]
    EmptyParameters,

    #[error("index {index} outside [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("factorial of a negative argument {0} is undefined")]
    UndefinedFactorial(BigInt),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions {lhs_rows}x{lhs_cols} and {rhs_rows}x{rhs_cols} do not compose")]
    ShapeMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix rows have unequal lengths")]
    RaggedRows,

    #[error("end positions must be strictly increasing, got {0} then {1}")]
    EndsNotIncreasing(i64, i64),

    #[error("walker {index} cannot reach end position {end} from start {start} in {steps} steps")]
    UnreachableEnd {
        index: usize,
        start: i64,
        end: i64,
        steps: usize,
    },

    #[error("need at least one walker")]
    NoWalkers,

    #[error("need at least one time step")]
    NoSteps,

    #[error("time {t} is not an interior time (valid range [1, {max}])")]
    BoundaryTime { t: usize, max: usize },

    #[error("duplicate query point (t={t}, x={x})")]
    DuplicateQueryPoint { t: usize, x: i64 },

    #[error("{count} configurations exceed the enumeration cap {cap}")]
    EnumerationCapExceeded { count: BigInt, cap: u64 },

    #[error("configuration does not belong to this walker ensemble")]
    ConfigurationMismatch,

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
