//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over F_{p}: divisible by a degree-{degree} factor")]
    ReducibleModulus { p: u64, degree: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operand does not belong to this field: {0}")]
    FieldMismatch(String),
    #[error("{d} does not divide {m}")]
    NotADivisor { d: usize, m: usize },
    #[error("multiplier {q} is not coprime to modulus {n}")]
    NonCoprimeMultiplier { q: u64, n: u64 },
    #[error("problem size {size} exceeds the supported limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("codeword does not match the code's alphabet or length: {0}")]
    AlphabetMismatch(String),
    #[error("invalid defining set: {0}")]
    InvalidDefiningSet(String),
    #[error("map is singular")]
    SingularMap,
    #[error("map is not semilinear for any Galois element of the given extension")]
    NotSemilinear,
    #[error("code is trivial; permutation automorphisms are the full symmetric group")]
    TrivialCode,
    #[error("generators do not generate a p-subgroup: {0}")]
    NotAPGroup(String),
    #[error("alpha map does not satisfy the cocycle condition")]
    NotACocycle,
    #[error("chi/f condition violated: {0}")]
    CondViolation(&'static str),
    #[error("no valid chi/f pair exists when the linearity degree equals the extension degree")]
    DegenerateA,
    #[error("chi is not linear over the required subfield")]
    ChiNotLinear,
    #[error("malformed group descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("permutation group is not regular")]
    NotRegular,
    #[error("search budget of {budget} nodes exhausted; results are partial")]
    BudgetExceeded { budget: u64 },
    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
