//! Exact arithmetic over GF(2)[X] and GF(2^L), and the sequence analyses
//! built on it.

mod binom;
mod field;
mod irreducible;
mod matrix;
mod poly;
mod sequence;

pub use binom::{binom_mod2, binom_period};
pub use field::{FieldCtx, FieldElem, MAX_FIELD_DEGREE};
pub use irreducible::{
    irreducible_power, poly_is_irreducible, poly_is_primitive, poly_is_primitive_with_cap,
    prime_factors, DEFAULT_PRIMITIVE_DEGREE_CAP,
};
pub use matrix::{solve_linear, BitMatrix, LinearSolution};
pub use poly::{poly_gcd, poly_mod, poly_mul, Degree, Poly};
pub use sequence::{
    berlekamp_massey, charpoly_from_connection, connection_from_charpoly, min_period,
    satisfies_recurrence, BitSequence, LinearComplexity,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroModulus,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("expected a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial {0} is reducible")]
    Reducible(Poly),
    #[error("polynomial {0} is not primitive")]
    NotPrimitive(Poly),
    #[error("cannot factor 2^{degree}-1: degree exceeds the trial-division cap of {cap}")]
    FactorizationBound { degree: usize, cap: usize },
    #[error("field degree {0} exceeds the supported maximum of 63")]
    FieldTooLarge(usize),
    #[error("value {value:#x} does not fit a field of degree {degree}")]
    ElementOutOfRange { value: u64, degree: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{poly} is not a power of a single irreducible polynomial ({found})")]
    NotAPrimePower { poly: Poly, found: String },
    #[error("cannot parse polynomial {0}")]
    PolyParse(String),
    #[error("cannot parse bit string: {0}")]
    BitParse(String),
    #[error("the zero polynomial does not define a recurrence")]
    ZeroRecurrence,
    #[error("sequence too short: need {needed} bits, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("period bound must be positive")]
    InvalidPeriodBound,
    #[error("no divisor of {bound} is a period of the observed sequence")]
    NoPeriod { bound: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inconsistent linear system (coefficient rank {rank})")]
    Inconsistent { rank: usize },
}
