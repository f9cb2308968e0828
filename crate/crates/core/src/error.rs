use thiserror::Error;

use crate::gf2poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    NotOddPrime(u64),
    #[error("{0} is not coprime to the modulus {1}")]
    NotCoprime(u64, u64),
    #[error("p = {p} exceeds the supported bound {max}")]
    PrimeTooLarge { p: u64, max: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("modulus {modulus} is reducible: found factor {factor}")]
    ReducibleModulus { modulus: Poly, factor: Poly },
    #[error("field modulus must have degree between 1 and {max} (got {degree:?})")]
    UnsupportedDegree { degree: Option<usize>, max: usize },
    #[error("the zero element has no inverse or multiplicative order")]
    ZeroElement,
    #[error("element orders are only available for extension degree <= 64 (got {0})")]
    OrderUnsupported(usize),
    #[error("operands belong to different algebras (p = {0} and p = {1})")]
    MismatchedPrime(u32, u32),
    #[error("generator {0} is not a unit")]
    NonUnitGenerator(String),
    #[error("closure exceeded the size cap of {0} elements")]
    ClosureTooLarge(usize),
    #[error("exhaustive enumeration of 2^{bits} elements exceeds the bound of {max_bits} bits")]
    EnumerationTooLarge { bits: u32, max_bits: u32 },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
