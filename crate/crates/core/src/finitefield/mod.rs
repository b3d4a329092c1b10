//! Finite fields `F_{p^k}` with a fixed table of moduli, Frobenius and embeddings.

mod element;
mod spec;
mod tables;

pub use element::{FieldElement, FieldOp};
pub use spec::{FieldSpec, MAX_FIELD_SIZE};
pub use tables::FieldTables;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported field F_{p}^{k}")]
    Unsupported { p: u32, k: u32 },
    #[error("modulus {0:?} is not monic irreducible")]
    Reducible(Vec<u32>),
    #[error("expected at most {expected} coordinates, got {got}")]
    BadCoords { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedSpecs,
    #[error("cannot embed F_{}^{} into F_{}^{}", from.0, from.1, to.0, to.1)]
    NotEmbeddable { from: (u32, u32), to: (u32, u32) },
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
}

/// Writes `q = p^e` with `p` prime.
pub fn prime_power(q: u32) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut e = 0;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
        e += 1;
    }
    if t != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p, e))
}

/// Möbius function.
pub fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of elements of `F_{q^k}` of exact degree `d` over `F_q`: `sum_{e | d} mu(d/e) q^e`.
pub fn elements_of_degree(q: u64, d: u32) -> i64 {
    (1..=d).filter(|e| d.is_multiple_of(*e)).map(|e| mobius(d / e) * (q as i64).pow(e)).sum()
}
