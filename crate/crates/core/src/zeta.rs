//! Coefficients `s_d` of inverse Hasse-Weil zeta functions of simple spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{int, TruncatedQPoly};

/// Default truncation order for coefficient lists.
pub const DEFAULT_MAX_D: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("eigenvalue coefficient {0} is not a unit root +-1")]
    UnsupportedEigenvalue(i64),
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
}

/// Frobenius eigenvalue `sign * q^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub sign: i8,
    pub power: u32,
}

impl Eigenvalue {
    pub fn new(coefficient: i64, power: u32) -> Result<Self, ZetaError> {
        match coefficient {
            1 | -1 => Ok(Eigenvalue { sign: coefficient as i8, power }),
            c => Err(ZetaError::UnsupportedEigenvalue(c)),
        }
    }

    pub fn q_pow(power: u32) -> Self {
        Eigenvalue { sign: 1, power }
    }

    pub fn as_poly(&self) -> TruncatedQPoly {
        TruncatedQPoly::monomial(self.power as i32, int(self.sign as i64))
    }

    /// `(sign q^power)^m` evaluated at an integer `q`.
    pub fn eval_power(&self, q: i128, m: u32) -> i128 {
        let s = if self.sign < 0 && m % 2 == 1 { -1 } else { 1 };
        s * q.pow(self.power * m)
    }
}

/// Compactly supported cohomology eigenvalue data of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub name: String,
    pub even_eigenvalues: Vec<Eigenvalue>,
    pub odd_eigenvalues: Vec<Eigenvalue>,
    pub proper: bool,
    pub dimension: u32,
}

impl SpaceDescriptor {
    /// `#Y(F_{q^m})` from the Lefschetz trace formula.
    pub fn point_count(&self, q: i128, m: u32) -> i128 {
        let even: i128 = self.even_eigenvalues.iter().map(|e| e.eval_power(q, m)).sum();
        let odd: i128 = self.odd_eigenvalues.iter().map(|e| e.eval_power(q, m)).sum();
        even - odd
    }
}

/// Named building-block spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSpace {
    Point,
    A1,
    A2,
    Gm,
    P1,
    Pn(u32),
    QconeSmooth,
    Qnsp,
    Qspl,
}

impl FromStr for NamedSpace {
    type Err = ZetaError;
    fn from_str(s: &str) -> Result<Self, ZetaError> {
        let t = s.trim();
        Ok(match t {
            "point" => NamedSpace::Point,
            "A1" => NamedSpace::A1,
            "A2" => NamedSpace::A2,
            "Gm" => NamedSpace::Gm,
            "P1" => NamedSpace::P1,
            "Qcone_smooth" => NamedSpace::QconeSmooth,
            "Qnsp" => NamedSpace::Qnsp,
            "Qspl" => NamedSpace::Qspl,
            _ => {
                let n = t
                    .strip_prefix("Pn(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix('P'))
                    .and_then(|r| r.parse::<u32>().ok())
                    .ok_or_else(|| ZetaError::UnknownSpace(t.to_string()))?;
                NamedSpace::Pn(n)
            }
        })
    }
}

impl fmt::Display for NamedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSpace::Point => write!(f, "point"),
            NamedSpace::A1 => write!(f, "A1"),
            NamedSpace::A2 => write!(f, "A2"),
            NamedSpace::Gm => write!(f, "Gm"),
            NamedSpace::P1 => write!(f, "P1"),
            NamedSpace::Pn(n) => write!(f, "Pn({n})"),
            NamedSpace::QconeSmooth => write!(f, "Qcone_smooth"),
            NamedSpace::Qnsp => write!(f, "Qnsp"),
            NamedSpace::Qspl => write!(f, "Qspl"),
        }
    }
}

/// Eigenvalue data of a named space.
pub fn named_space(space: NamedSpace) -> SpaceDescriptor {
    let q = Eigenvalue::q_pow;
    let (even, odd, proper, dimension) = match space {
        NamedSpace::Point => (vec![q(0)], vec![], true, 0),
        NamedSpace::A1 => (vec![q(1)], vec![], false, 1),
        NamedSpace::A2 => (vec![q(2)], vec![], false, 2),
        NamedSpace::Gm => (vec![q(1)], vec![q(0)], false, 1),
        NamedSpace::P1 => (vec![q(0), q(1)], vec![], true, 1),
        NamedSpace::Pn(n) => ((0..=n).map(q).collect(), vec![], true, n),
        NamedSpace::QconeSmooth => (vec![q(1), q(2)], vec![], false, 2),
        NamedSpace::Qnsp => (vec![q(0), q(1), Eigenvalue { sign: -1, power: 1 }, q(2)], vec![], true, 2),
        NamedSpace::Qspl => (vec![q(0), q(1), q(1), q(2)], vec![], true, 2),
    };
    SpaceDescriptor { name: space.to_string(), even_eigenvalues: even, odd_eigenvalues: odd, proper, dimension }
}

/// `s_0, s_1, ...`: coefficients of `1/Z(Y; t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaCoeffs {
    pub coeffs: Vec<TruncatedQPoly>,
}

impl ZetaCoeffs {
    /// The inverse zeta function of the empty space, `1`.
    pub fn one(max_d: usize) -> Self {
        let mut coeffs = vec![TruncatedQPoly::zero(); max_d + 1];
        coeffs[0] = TruncatedQPoly::one();
        ZetaCoeffs { coeffs }
    }

    /// `s_d`, zero beyond the stored range.
    pub fn s(&self, d: usize) -> TruncatedQPoly {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn max_d(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn mul_linear(&self, alpha: &TruncatedQPoly) -> ZetaCoeffs {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|d| if d == 0 { self.coeffs[0].clone() } else { &self.coeffs[d] - &(alpha * &self.coeffs[d - 1]) })
            .collect();
        ZetaCoeffs { coeffs }
    }

    fn div_linear(&self, beta: &TruncatedQPoly) -> ZetaCoeffs {
        let mut coeffs: Vec<TruncatedQPoly> = Vec::with_capacity(self.coeffs.len());
        for d in 0..self.coeffs.len() {
            let c = if d == 0 { self.coeffs[0].clone() } else { &self.coeffs[d] + &(beta * &coeffs[d - 1]) };
            coeffs.push(c);
        }
        ZetaCoeffs { coeffs }
    }
}

/// Expands `prod_even (1 - alpha t) / prod_odd (1 - beta t)` through `t^max_d`.
pub fn inverse_zeta_coeffs(space: &SpaceDescriptor, max_d: usize) -> ZetaCoeffs {
    let mut z = ZetaCoeffs::one(max_d);
    for a in &space.even_eigenvalues {
        z = z.mul_linear(&a.as_poly());
    }
    for b in &space.odd_eigenvalues {
        z = z.div_linear(&b.as_poly());
    }
    z
}

/// Inverse zeta of a disjoint union: the product of the series.
pub fn zeta_product(a: &ZetaCoeffs, b: &ZetaCoeffs, max_d: usize) -> ZetaCoeffs {
    let coeffs = (0..=max_d)
        .map(|d| (0..=d).map(|i| &a.s(i) * &b.s(d - i)).sum())
        .collect();
    ZetaCoeffs { coeffs }
}

/// Removes one rational point: multiplies the inverse zeta by `1/(1 - t)`.
pub fn remove_rational_point(a: &ZetaCoeffs, max_d: usize) -> ZetaCoeffs {
    let mut acc = TruncatedQPoly::zero();
    let coeffs = (0..=max_d)
        .map(|d| {
            acc = &acc + &a.s(d);
            acc.clone()
        })
        .collect();
    ZetaCoeffs { coeffs }
}
