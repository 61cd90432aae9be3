use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: bases of a power sum must be positive")]
    InvalidBase(String),
    #[error("operation requires a nonzero form")]
    EmptyForm,
    #[error("leading coefficient {0} is not positive")]
    NegativeLeading(String),
    #[error("form has non-integral bases; an integer-rooted form is required")]
    NonIntegralBases,
    #[error("leading base {0} is not a perfect square; substitute n -> 2n+j first")]
    NonSquareLeadingBase(String),
    #[error("f({n}) = {value} is not an integer")]
    NonIntegerValue { n: u64, value: String },
    #[error("{0} is a perfect square; its square root has no periodic expansion")]
    SquareInput(BigUint),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit: {what} exceeds cap {cap}")]
    ResourceLimit { what: String, cap: u64 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
