use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable string code (see [`Error::code`]) that the
/// command line surface prints in its machine readable output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("extension modulus is not irreducible over the base field")]
    ReducibleModulus,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expansion point is singular (pole or critical point)")]
    SingularExpansionPoint,
    #[error("no Padé approximant with the requested degrees")]
    NoApproximant,
    #[error("characteristic {characteristic} too small for degree {degree}")]
    CharacteristicTooSmall { characteristic: String, degree: usize },
    #[error("no good specialization point found after {0} attempts")]
    BadSpecializationExhausted(usize),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("point is a base point of the pencil (numerator and denominator both vanish)")]
    BasePointOfPencil,
    #[error("field too small: need {needed} elements, have {available}")]
    FieldTooSmall { needed: String, available: String },
    #[error("field with {0} elements is too large for enumeration")]
    FieldTooLargeForEnumeration(String),
    #[error("no outer function u with f = u(h)")]
    NoSuchU,
    #[error("retry budget of {0} exhausted")]
    RetryBudgetExhausted(usize),
    #[error("factor has all coefficients in the base field")]
    FactorIsRational,
    #[error("candidate failed verification, retry with fresh points")]
    RetryNeeded,
    #[error("input exceeds guard: {0}")]
    DimensionGuard(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ContextMismatch => "context_mismatch",
            Error::NotPrime(_) => "not_prime",
            Error::ReducibleModulus => "reducible_modulus",
            Error::NotDivisible => "not_divisible",
            Error::ZeroDenominator => "zero_denominator",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::SingularExpansionPoint => "singular_expansion_point",
            Error::NoApproximant => "no_approximant",
            Error::CharacteristicTooSmall { .. } => "characteristic_too_small",
            Error::BadSpecializationExhausted(_) => "bad_specialization_exhausted",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::BasePointOfPencil => "base_point_of_pencil",
            Error::FieldTooSmall { .. } => "field_too_small",
            Error::FieldTooLargeForEnumeration(_) => "field_too_large_for_enumeration",
            Error::NoSuchU => "no_such_u",
            Error::RetryBudgetExhausted(_) => "retry_budget_exhausted",
            Error::FactorIsRational => "factor_is_rational",
            Error::RetryNeeded => "retry_needed",
            Error::DimensionGuard(_) => "dimension_guard",
            Error::Parse { .. } => "parse_error",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// Parse and usage problems, as opposed to failures reported by an algorithm.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidInput(_)
                | Error::NotPrime(_)
                | Error::ReducibleModulus
                | Error::ZeroDenominator
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
