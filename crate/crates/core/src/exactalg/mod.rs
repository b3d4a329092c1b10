//! Exact rationals, truncated polynomials in `q`, and Schur-basis vectors.

mod poly;
mod rational;
mod schur;

pub use poly::{eval_i128, DualityCompletion, TruncatedQPoly, Var};
pub use rational::{big, format_rational, int, parse_rational, Rational};
pub use schur::{
    character, class_size, factorial, partitions, schur_from_class_values, Partition, SchurVector,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor must be an exact polynomial")]
    InexactDivisor,
    #[error("polynomial is truncated; an exact polynomial is required")]
    NotExact,
    #[error("duality needs trusted coefficients from degree {needed} up, but the floor is {floor}")]
    DualityInsufficient { needed: i32, floor: i32 },
    #[error("coefficients of q^{degree} and q^{mirror} disagree under duality")]
    DualityConflict { degree: i32, mirror: i32 },
    #[error("coefficient {coeff} of degree {degree} is not a non-negative integer")]
    NotBettiCompatible { degree: i32, coeff: String },
    #[error("middle coefficient of degree {0} is still undetermined")]
    UnfilledHole(i32),
    #[error("no undetermined coefficient to pin")]
    NoHole,
    #[error("invalid partition {0:?}")]
    BadPartition(String),
    #[error("partition of {got} used where a partition of {expected} is required")]
    SizeMismatch { expected: u32, got: u32 },
    #[error("symmetric group characters are only tabulated for n <= 3, got {0}")]
    UnsupportedDegree(u32),
}
