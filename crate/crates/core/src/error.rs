use crate::sequences::PackingCase;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("digit count {0} is outside 1..=100")]
    DigitsOutOfRange(u32),

    #[error("pi exponent {0} is not 0 or 1")]
    PiExponentOutOfRange(u32),

    #[error("cannot combine a value scaled by pi^{0} with one scaled by pi^{1}")]
    PiExponentMismatch(u8, u8),

    #[error("index {index} is outside the domain of case {case} (requires i >= {min})")]
    IndexOutOfDomain {
        case: PackingCase,
        index: u64,
        min: u64,
    },

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("{op} is not defined for case {case}")]
    WrongCase {
        op: &'static str,
        case: PackingCase,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
