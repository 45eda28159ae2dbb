use thiserror::Error;

/// Every failure the crate can report.
///
/// Predicate evaluation, arithmetic, execution and bounded checking share one
/// enum so that a block transform can bubble any of them with `?`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("variable `{name}` is not {expected}")]
    KindMismatch {
        name: String,
        expected: &'static str,
    },

    #[error("index {index} out of range for `{name}` (length {len})")]
    IndexOutOfRange {
        name: String,
        index: i64,
        len: usize,
    },

    #[error("64-bit overflow in {op}({lhs}, {rhs})")]
    Overflow {
        op: &'static str,
        lhs: i64,
        rhs: i64,
    },

    #[error("select_by_bit expects a bit (0 or 1), got {0}")]
    NotABit(i64),

    #[error("constant multiplier must be at least 1")]
    ZeroMultiplier,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition of `{0}` does not hold on the initial state")]
    Precondition(String),

    #[error(
        "`{procedure}` block {block} exceeded {cap} iterations; \
         the loop's termination obligation is not met"
    )]
    Nontermination {
        procedure: String,
        block: usize,
        cap: u64,
    },

    #[error("enumeration budget of {budget} assignments exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("malformed procedure `{procedure}`: {reason}")]
    Malformed { procedure: String, reason: String },

    #[error("unknown procedure `{name}`; available: {available}")]
    UnknownProcedure { name: String, available: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
