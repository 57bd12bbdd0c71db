use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero raised to the negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("binomial coefficient requested for negative k = {0}")]
    NegativeK(i64),
    #[error("quadratic extension elements have different discriminants")]
    DiscriminantMismatch,
    #[error("element has zero norm and is not invertible")]
    NonInvertible,
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("empty index range [{lo}, {hi}]")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("characteristic polynomial has a repeated root (p^2 - 4q = 0)")]
    DegenerateRoot,
    #[error("summation bound k = {0} is negative")]
    NegativeSumBound(i64),
    #[error("recurrence configuration has a vanishing coefficient {0}")]
    VanishingCoefficient(&'static str),
    #[error("stride d - c is zero")]
    ZeroStride,
    #[error("three-term recurrence fails at index {index}")]
    ConfigViolation { index: i64 },
    #[error("summand is singular: term {j} has a zero denominator factor at index {index}")]
    SingularSummand { j: i64, index: i64 },
    #[error("guard violated: {quantity} vanishes")]
    GuardViolation { quantity: String },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid assignment: {0}")]
    Assignment(String),
    #[error("unknown theorem selector: theorem {theorem}, variant {variant}")]
    InvalidSelector { theorem: u8, variant: u8 },
    #[error("cannot parse rational literal `{0}`")]
    ParseRational(String),
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
}
