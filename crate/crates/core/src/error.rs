use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition sizes differ: |{irrep}| = {irrep_size} but |{class}| = {class_size}")]
    SizeMismatch {
        irrep: String,
        irrep_size: usize,
        class: String,
        class_size: usize,
    },

    #[error("series has a nonzero term at exponent {exponent}; {reason}")]
    BadSeriesTerm { exponent: i64, reason: &'static str },

    #[error("partition series has an invalid term at {partition}; {reason}")]
    BadPartitionTerm {
        partition: String,
        reason: &'static str,
    },

    #[error("leading coefficient is not invertible")]
    NotInvertible,

    #[error("requested order {requested} exceeds the valid truncation {available}")]
    TruncationExceeded { requested: i64, available: i64 },

    #[error("brute-force enumeration would visit about {estimate} tuples (budget {budget})")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("linear system is singular: {0}")]
    Singular(String),

    #[error(
        "polynomial division left a nonzero remainder: {dividend} = ({divisor}) * q + {remainder}"
    )]
    NonzeroRemainder {
        dividend: String,
        divisor: String,
        remainder: String,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
