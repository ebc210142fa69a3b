use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{exp} exceeds the size bound {bound}")]
    FieldTooLarge { p: u64, exp: u32, bound: u64 },

    #[error("element index {index} out of range for field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },

    #[error("element {index} does not lie in the requested layer")]
    NotInLayer { index: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation undefined for a constant polynomial")]
    ConstantPolynomial,

    #[error("trinomial parameters must be nonzero")]
    ZeroParameter,

    #[error("operation requires characteristic {expected}, field has characteristic {actual}")]
    WrongCharacteristic { expected: &'static str, actual: u32 },

    #[error("point is not a (q+1)-th root of unity")]
    NotInMu,

    #[error("exact division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("coefficient {index} of a curve expected over F_q lies outside F_q")]
    CoefficientOutsideSubfield { index: u32 },

    #[error("gcd of numerator and denominator has impossible degree {0}")]
    ImpossibleGcdDegree(usize),

    #[error("exhaustive scan at q = {q} exceeds the budget q <= {budget}; use sampling")]
    BudgetExceeded { q: u64, budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
