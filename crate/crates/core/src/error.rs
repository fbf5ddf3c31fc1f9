use thiserror::Error;

/// Errors raised while building codes, information sets, automorphisms and decoders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree m = {0} is not supported (need 3 <= m <= 16, or m >= 1 with the small-degree override)")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    DegreeMismatch { poly: u32, m: u32 },
    #[error("polynomial {poly:#x} is not primitive: the class of X has order {order:?} instead of {n}")]
    NotPrimitive { poly: u32, order: Option<u32>, n: u32 },
    #[error("{x} is not invertible modulo {modulus}")]
    NotCoprime { x: u64, modulus: u64 },
    #[error("2^{m} - 1 has no decomposition r1*r2 with coprime factors > 1")]
    NoValidDecomposition { m: u32 },
    #[error("({r1}, {r2}) is not a valid decomposition of 2^{m} - 1")]
    InvalidDecomposition { m: u32, r1: u64, r2: u64 },
    #[error("the order of 2 modulo r1 = {r1} is {a}, not m = {m}")]
    NotFullOrder { m: u32, r1: u64, a: u32 },
    #[error("lambda0 needs r1 > m (r1 = {r1}, m = {m})")]
    FactorTooSmall { m: u32, r1: u64 },
    #[error("defining set is not closed under doubling modulo {n}: {s} in the set but {double} is not")]
    DefiningSetNotClosed { n: u32, s: u32, double: u32 },
    #[error("parity-check matrix has rank {got}, expected {expected}")]
    RankMismatch { got: usize, expected: usize },
    #[error("not an information set: {0}")]
    NotAnInformationSet(String),
    #[error("operation refused for m = {m}: limited to m <= {max}")]
    TooLarge { m: u32, max: u32 },
    #[error("affine map needs a nonzero multiplier")]
    ZeroMultiplier,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("position set has {got} elements, more than s = {s}")]
    TooManyPositions { got: usize, s: usize },
    #[error("position {0} is outside the nonzero field elements")]
    InvalidPosition(usize),
    #[error("no power of T_alpha moves the positions off I'")]
    NoWitness,
    #[error("exhaustive enumeration of {count} items exceeds the budget of {budget}; use sampled mode")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("invalid hex word: {0}")]
    InvalidHex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
