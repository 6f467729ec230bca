use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong while building towers, codes and certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("extension degrees m={m} and h={h} are not coprime")]
    DegreesNotCoprime { m: u32, h: u32 },
    #[error("ell={ell} does not divide |K|-1={k_units}")]
    RootsOfUnityAbsent { ell: u32, k_units: u64 },
    #[error("block length N={block_len} is not a multiple of m={m}")]
    BlockLengthNotMultiple { block_len: u32, m: u32 },
    #[error("field of size {p}^{degree} exceeds the supported range")]
    FieldTooLarge { p: u32, degree: u32 },
    #[error("element does not live in the expected field")]
    LevelMismatch,
    #[error("operands belong to different towers or coefficient fields")]
    TowerMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("evaluation point is not an ell-th root of unity")]
    NotRootOfUnity,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("partition parts are not all equal")]
    UnequalParts,
    #[error("invalid partition")]
    InvalidPartition,
    #[error("enumeration needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("the code is zero-dimensional")]
    ZeroCode,
    #[error("the characteristic divides ell")]
    CharacteristicDividesEll,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("grid pair (a^{a_exp}, sigma^{sigma_exp}(beta)) is not in the defining set")]
    GridNotContained { a_exp: u64, sigma_exp: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("beta is not a normal element of L/K")]
    NotNormal,
    #[error("a is not a primitive ell-th root of unity")]
    NotPrimitive,
    #[error("selection has {got} columns, need {need}")]
    SelectionTooSmall { need: usize, got: usize },
    #[error("polynomial is not a divisor of the defining modulus")]
    NotADivisor,
    #[error("generator f1 does not have coefficients in E")]
    GeneratorNotOverE,
    #[error("codes are defined over different fields")]
    FieldMismatch,
    #[error("matrix is not invertible")]
    NotInvertible,
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }
}
