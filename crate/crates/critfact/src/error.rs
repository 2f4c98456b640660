//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failures surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("characteristic {0} is too small for this input")]
    SmallCharacteristic(u64),
    #[error("the polynomial vanishes at the chosen center")]
    BadCenter,
    #[error("leading coefficient is not a unit modulo the chosen modulus")]
    LeadingCoeffNotUnit,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("polynomial is not separable with respect to y")]
    Inseparable,
    #[error("unsupported in small characteristic: {0}")]
    SmallCharacteristicUnsupported(String),
    #[error("residue field tower exceeds the degree cap {0}")]
    TowerTooDeep(usize),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("recombination cap exceeded: {0}")]
    RecombinationCap(String),
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("exponent too large at byte {offset}")]
    ExponentTooLarge { offset: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
