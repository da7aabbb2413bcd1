use crate::fan::FanViolation;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("modular prime {0} divides an entry denominator")]
    PrimeDividesDenominator(u64),
    #[error("invalid modular prime list: {0}")]
    InvalidPrimes(String),

    #[error("cone is not pointed")]
    NotPointed,
    #[error("simplicial cone determinant {0} exceeds the enumeration limit")]
    DeterminantTooLarge(String),
    #[error("dimension {found} exceeds the supported maximum {max}")]
    DimensionTooLarge { found: usize, max: usize },
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope has a non-lattice vertex")]
    NonLatticeVertex,

    #[error("invalid fan: {0}")]
    InvalidFan(FanViolation),
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("rays do not span the lattice")]
    RaysDoNotSpan,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("divisor is not nef")]
    NotNef,
    #[error("fan is not two-dimensional")]
    NotSurface,

    #[error("at least two generators are required")]
    TooFewGenerators,
    #[error("class is not effective")]
    NotEffective,
    #[error("grading rank {found} exceeds the supported maximum {max}")]
    RankTooLarge { found: usize, max: usize },

    #[error("the zero polynomial has no finite order")]
    ZeroPolynomial,
    #[error("functional order {order} exceeds k - 1 = {limit}")]
    FunctionalOrderTooHigh { order: u64, limit: i64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("projection is not surjective onto Z^2")]
    NotSurjective,
}
