use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by field construction, polynomial handling and the
/// decomposition strategies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("invalid field spec `{0}`")]
    FieldSpec(String),
    #[error("invalid field element `{0}`")]
    ElementSyntax(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("polynomials live over different fields")]
    FieldMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element {0} is not a sum of k-th powers (not a k-Waring field)")]
    NotRepresentable(String),
    #[error("not a k-Waring field: F_{q} with k = {k}")]
    NotWaringField { q: u32, k: u32 },
    #[error("the field has {q} elements, at most k = {k}")]
    FieldTooSmall { q: u32, k: u32 },
    #[error("characteristic {p} divides k = {k}")]
    CharacteristicDividesK { p: u32, k: u32 },
    #[error("degree {d} is below 2k^4 = {min}; use --fallback to route to the cover strategy")]
    DegreeTooSmall { d: u32, min: u64 },
    #[error("polynomial is not a {0}-th power")]
    NotAPower(u64),
    #[error("valuation of the zero polynomial")]
    ZeroValuation,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Invalid,
    Unsupported,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotPrime(_)
            | Error::InvalidModulus(_)
            | Error::FieldSpec(_)
            | Error::ElementSyntax(_)
            | Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::FieldMismatch
            | Error::InvalidArgument(_)
            | Error::ZeroValuation => ErrorClass::Invalid,
            Error::FieldTooLarge(_)
            | Error::NotRepresentable(_)
            | Error::NotWaringField { .. }
            | Error::FieldTooSmall { .. }
            | Error::CharacteristicDividesK { .. }
            | Error::DegreeTooSmall { .. }
            | Error::NotAPower(_) => ErrorClass::Unsupported,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }
}
