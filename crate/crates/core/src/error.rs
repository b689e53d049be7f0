use thiserror::Error;

/// Everything that can go wrong while parsing inputs or evaluating binomials.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid digit {ch:?} for radix {radix}")]
    InvalidDigit { ch: char, radix: u32 },
    #[error("radix {0} is outside 2..=36")]
    InvalidRadix(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },
    #[error("subtraction would produce a negative result")]
    NegativeResult,
    #[error("digit strings use different bases ({0} and {1})")]
    MixedBase(u64, u64),
    #[error("expected A >= B")]
    OrderViolation,
    #[error("empty block requested")]
    EmptyBlock,
    #[error("quotient is not p-integral (valuation {numerator} - {denominator})")]
    NegativeValuation { numerator: u64, denominator: u64 },
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(u32, u32),
    #[error("block lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("input too large for the exact oracle")]
    TooLarge,
    #[error("modulus {prime}^{exponent} does not fit in 64 bits")]
    ModulusTooLarge { prime: u64, exponent: u32 },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
