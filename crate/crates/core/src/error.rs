use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no prime p >= {floor} with p = 1 mod {exponent} below 2^31")]
    NoSplittingPrime { exponent: u64, floor: u64 },

    #[error("{m} does not divide p - 1 = {}", p - 1)]
    NoRootOfUnity { p: u32, m: u64 },

    #[error("group closure exceeded the size cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("subgroup is not normal: g={g} conjugates n={n} to {conj}, outside the subgroup")]
    NotNormal { g: u32, n: u32, conj: u32 },

    #[error("representation error: {0}")]
    Representation(String),

    #[error("modules live on different groups or fields")]
    Mismatch,

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("component of {nvars} variables in degree {degree} has too many monomials")]
    ComponentTooLarge { nvars: usize, degree: u32 },

    #[error("vector is not invariant under the subgroup")]
    NotInvariant,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
