//! The counting pipeline for `M_{4,n}` and its compactification: sieve sums
//! over the three quadric families divided by automorphism orders, plus the
//! hyperelliptic locus and the boundary, completed by Poincaré duality and
//! pinned by the Euler characteristic where duality leaves a hole.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{int, partitions, schur_from_class_values, ExactAlgError, Partition, Rational, SchurVector, TruncatedQPoly};
use crate::hyperelliptic::{hyperelliptic_equivariant, HyperellipticError};
use crate::quadrics::QuadricKind;
use crate::sieve::{sieve_term_numeric, sieve_term_symbolic, FamilySpec, SieveError, SieveTermKey, MAX_SIEVE_DEGREE};

/// Genus handled by the pipeline.
pub const GENUS: u32 = 4;

/// Largest number of marked points handled by the pipeline.
pub const MAX_MARKED: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("n = {0} is out of range (0..=3)")]
    OutOfRange(u32),
    #[error("twist {twist} is not a partition of {n}")]
    BadTwist { n: u32, twist: String },
    #[error("no equivariant data for n = {0}")]
    NoEquivariantData(u32),
    #[error("no Euler characteristic available to pin n = {0}")]
    NoEulerDatum(u32),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Hyperelliptic(#[from] HyperellipticError),
    #[error(transparent)]
    Alg(#[from] ExactAlgError),
}

fn t(terms: &[(i32, i64)]) -> TruncatedQPoly {
    TruncatedQPoly::from_terms(terms.iter().copied())
}

fn dense(top: i32, coeffs: &[i64]) -> TruncatedQPoly {
    t(&coeffs.iter().enumerate().map(|(i, &c)| (top - i as i32, c)).collect::<Vec<_>>())
}

fn part(s: &str) -> Partition {
    s.parse().expect("static partition")
}

/// Orders of the automorphism groups of the three quadrics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutOrders {
    pub cone: TruncatedQPoly,
    pub nonsplit: TruncatedQPoly,
    pub split: TruncatedQPoly,
}

impl AutOrders {
    pub fn standard() -> Self {
        AutOrders {
            cone: t(&[(7, 1), (6, -1), (5, -1), (4, 1)]),
            nonsplit: t(&[(6, 2), (2, -2)]),
            split: t(&[(6, 2), (4, -4), (2, 2)]),
        }
    }

    pub fn get(&self, kind: QuadricKind) -> &TruncatedQPoly {
        match kind {
            QuadricKind::Cone => &self.cone,
            QuadricKind::Nonsplit => &self.nonsplit,
            QuadricKind::Split => &self.split,
        }
    }
}

/// Point counts of the boundary of `M_{4,n}`, plain for `n <= 3` and
/// equivariant for `n = 2, 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub plain: BTreeMap<u32, TruncatedQPoly>,
    pub equivariant: BTreeMap<u32, SchurVector>,
}

impl BoundaryData {
    pub fn standard() -> Self {
        let mut plain = BTreeMap::new();
        plain.insert(0, dense(8, &[3, 12, 33, 50, 50, 32, 13, 4, 1]));
        plain.insert(1, dense(9, &[4, 28, 94, 192, 240, 191, 93, 31, 6, 1]));
        plain.insert(2, dense(10, &[8, 72, 321, 842, 1362, 1362, 838, 321, 78, 11, 1]));
        plain.insert(3, dense(11, &[17, 200, 1172, 3990, 8292, 10606, 8296, 3977, 1179, 205, 19, 2]));
        let mut equivariant = BTreeMap::new();
        equivariant.insert(
            2,
            SchurVector::new(
                2,
                [
                    (part("2"), dense(10, &[7, 52, 222, 563, 901, 901, 561, 221, 56, 9, 1])),
                    (part("1,1"), dense(10, &[1, 20, 99, 279, 461, 461, 277, 100, 22, 2, 0])),
                ],
            )
            .expect("static data"),
        );
        equivariant.insert(
            3,
            SchurVector::new(
                3,
                [
                    (part("3"), dense(11, &[9, 84, 426, 1351, 2692, 3415, 2694, 1347, 425, 85, 11, 1])),
                    (part("2,1"), dense(11, &[4, 56, 350, 1224, 2577, 3304, 2578, 1220, 353, 58, 5, 1])),
                    (part("1,1,1"), dense(10, &[4, 46, 191, 446, 583, 446, 190, 48, 4, -2, -1])),
                ],
            )
            .expect("static data"),
        );
        BoundaryData { plain, equivariant }
    }
}

/// Euler characteristics used to fill the middle coefficient left open by duality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerData {
    pub chi_m43: i64,
    pub chi_equivariant_m43: SchurVector,
}

impl EulerData {
    pub fn standard() -> Self {
        let chi = SchurVector::new(
            3,
            [
                (part("3"), TruncatedQPoly::constant(2)),
                (part("2,1"), TruncatedQPoly::constant(-6)),
                (part("1,1,1"), TruncatedQPoly::zero()),
            ],
        )
        .expect("static data");
        EulerData { chi_m43: -10, chi_equivariant_m43: chi }
    }

    /// `chi(M_{4,twist})`, the Euler characteristic of the twisted form.
    pub fn chi(&self, twist: &Partition) -> Result<Rational, AssemblyError> {
        if twist.size() != 3 {
            return Err(AssemblyError::NoEulerDatum(twist.size()));
        }
        let v = self.chi_equivariant_m43.character_specialize(twist)?;
        Ok(v.coeff(0).unwrap_or_default())
    }
}

fn check(n: u32, twist: &Partition) -> Result<(), AssemblyError> {
    if n > MAX_MARKED {
        return Err(AssemblyError::OutOfRange(n));
    }
    if twist.size() != n {
        return Err(AssemblyError::BadTwist { n, twist: twist.to_string() });
    }
    Ok(())
}

/// Complex dimension of `M_{4,n}`.
pub fn dimension(n: u32) -> i32 {
    3 * GENUS as i32 - 3 + n as i32
}

/// Lowest trusted degree of the approximate open counts.
pub fn trusted_floor(n: u32) -> i32 {
    match n {
        0 | 1 => 5,
        2 => 6,
        _ => 7,
    }
}

/// `sum_kind (sum_{d <= 3} S_d) / #Aut(Q)`, expanded down to the trusted floor.
pub fn nonhyperelliptic_open_count(n: u32, twist: &Partition) -> Result<TruncatedQPoly, AssemblyError> {
    check(n, twist)?;
    let auts = AutOrders::standard();
    let floor = trusted_floor(n);
    let mut acc = TruncatedQPoly::zero();
    for kind in QuadricKind::ALL {
        let fam = FamilySpec::new(kind, twist.clone())?;
        let mut n_kind = TruncatedQPoly::zero();
        for d in 0..=MAX_SIEVE_DEGREE {
            n_kind = &n_kind + &sieve_term_symbolic(&SieveTermKey::new(fam.clone(), d))?;
        }
        acc = &acc + &n_kind.div_series(auts.get(kind), floor)?;
    }
    Ok(acc.truncate(floor))
}

/// Approximate count of `M_{4,twist}`: nonhyperelliptic part plus the hyperelliptic locus.
pub fn open_count(n: u32, twist: &Partition) -> Result<TruncatedQPoly, AssemblyError> {
    let nh = nonhyperelliptic_open_count(n, twist)?;
    Ok(&nh + &hyperelliptic_equivariant(GENUS, twist)?)
}

/// Boundary count of the twisted form, by character specialization for `n >= 2`.
pub fn boundary_poly(n: u32, twist: &Partition) -> Result<TruncatedQPoly, AssemblyError> {
    check(n, twist)?;
    let data = BoundaryData::standard();
    if twist.is_all_ones() {
        return Ok(data.plain[&n].clone());
    }
    let v = data.equivariant.get(&n).ok_or(AssemblyError::NoEquivariantData(n))?;
    Ok(v.character_specialize(twist)?)
}

/// Fills the single duality hole so that the open count at `q = 1` equals `chi`.
pub fn euler_pin(
    completion: &crate::exactalg::DualityCompletion,
    boundary: &TruncatedQPoly,
    chi: &Rational,
) -> Result<TruncatedQPoly, AssemblyError> {
    Ok(completion.pin_at_one(boundary, chi)?)
}

/// Exact count of the compactification of `M_{4,twist}`.
pub fn closed_count(n: u32, twist: &Partition) -> Result<TruncatedQPoly, AssemblyError> {
    let boundary = boundary_poly(n, twist)?;
    let approx = &open_count(n, twist)? + &boundary;
    let completion = approx.palindrome_complete(dimension(n))?;
    if completion.hole.is_none() {
        return Ok(completion.into_exact()?);
    }
    let chi = EulerData::standard().chi(twist)?;
    euler_pin(&completion, &boundary, &chi)
}

/// Exact count of `M_{4,twist}`: the closed count minus the boundary.
pub fn open_polynomial(n: u32, twist: &Partition) -> Result<TruncatedQPoly, AssemblyError> {
    Ok(&closed_count(n, twist)? - &boundary_poly(n, twist)?)
}

/// Equivariant counts `(closed, open)` of `M_{4,n}` in the Schur basis, for `n = 2, 3`.
pub fn equivariant_closed_and_open(n: u32) -> Result<(SchurVector, SchurVector), AssemblyError> {
    let data = BoundaryData::standard();
    let boundary = data.equivariant.get(&n).ok_or(AssemblyError::NoEquivariantData(n))?;
    let mut values = BTreeMap::new();
    for sigma in partitions(n) {
        let v = &open_count(n, &sigma)? + &boundary.character_specialize(&sigma)?;
        values.insert(sigma, v);
    }
    let approx = schur_from_class_values(n, &values)?;
    let euler = EulerData::standard();
    let closed = approx.try_map(|mu, p| {
        let completion = p.palindrome_complete(dimension(n))?;
        match completion.hole {
            None => completion.into_exact(),
            Some(_) if n == 3 => {
                let chi = euler.chi_equivariant_m43.get(mu).coeff(0).unwrap_or_default();
                completion.pin_at_one(&boundary.get(mu), &chi)
            }
            Some(_) => completion.into_exact(),
        }
    })?;
    let open = closed.sub(boundary)?;
    Ok((closed, open))
}

/// Poincaré polynomial in `t` of the compactification of `M_{4,n}`.
pub fn betti_poincare_poly(n: u32) -> Result<TruncatedQPoly, AssemblyError> {
    Ok(closed_count(n, &Partition::ones(n))?.betti_poincare()?)
}

/// `sum_kind N_k / #Aut + #H + #boundary` at `q`, where `N_k` sums the
/// sieve terms of degree at most 3 given by `term`.
fn pipeline_value<F>(n: u32, q: u32, mut term: F) -> Result<Rational, AssemblyError>
where
    F: FnMut(&SieveTermKey) -> Result<Rational, AssemblyError>,
{
    let twist = Partition::ones(n);
    check(n, &twist)?;
    let auts = AutOrders::standard();
    let x = int(q as i64);
    let mut acc = int(0);
    for kind in QuadricKind::ALL {
        let fam = FamilySpec::new(kind, twist.clone())?;
        let mut s = int(0);
        for d in 0..=MAX_SIEVE_DEGREE {
            s += term(&SieveTermKey::new(fam.clone(), d))?;
        }
        acc += s / auts.get(kind).eval(&x);
    }
    acc += hyperelliptic_equivariant(GENUS, &twist)?.eval(&x);
    acc += boundary_poly(n, &twist)?.eval(&x);
    Ok(acc)
}

/// The pipeline at `q` with numeric sieve terms, as an exact rational.
pub fn numeric_pipeline_value(n: u32, q: u32) -> Result<Rational, AssemblyError> {
    pipeline_value(n, q, |key| Ok(Rational::from_integer(sieve_term_numeric(key, q)?.into())))
}

/// The pipeline at `q` with the tabulated sieve terms; `None` if some term is truncated.
pub fn symbolic_pipeline_value(n: u32, q: u32) -> Result<Option<Rational>, AssemblyError> {
    let x = int(q as i64);
    let mut exact = true;
    let v = pipeline_value(n, q, |key| {
        let p = sieve_term_symbolic(key)?;
        exact &= p.is_exact();
        Ok(p.eval(&x))
    })?;
    Ok(exact.then_some(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_tables_are_consistent() {
        let data = BoundaryData::standard();
        for n in 2..=3 {
            assert_eq!(data.equivariant[&n].dimension_specialize(), data.plain[&n]);
        }
    }

    #[test]
    fn euler_characteristic_specializes() {
        assert_eq!(EulerData::standard().chi(&Partition::ones(3)).unwrap(), int(-10));
    }
}
