//! The Hasse-Weil sieve over families of cubic sections of quadrics:
//! numeric sieve terms by exhaustive enumeration and the tabulated symbolic terms.

mod tables;

pub use tables::TRUNCATED_FLOOR;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{partitions, Partition, TruncatedQPoly};
use crate::quadrics::{
    count_fibers, frobenius_orbit_configs, geometry_predicates, Echelon, OrbitConfig, Pt, QuadricError,
    QuadricKind, Row, SurfaceModel,
};

/// Largest sieve degree with tabulated terms.
pub const MAX_SIEVE_DEGREE: u32 = 3;

/// Fields for which the numeric engine is supported.
pub const SUPPORTED_Q: [u32; 4] = [2, 3, 4, 5];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error("unsupported q = {0}")]
    UnsupportedQ(u32),
    #[error("no tabulated sieve term for {0}")]
    MissingKey(String),
    #[error("sieve degree {0} is out of range")]
    DegreeOutOfRange(u32),
    #[error("twist {0} is not supported")]
    BadTwist(String),
}

/// A family of cubic sections of a quadric with `n` marked points on which
/// Frobenius acts by a permutation of cycle type `twist`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: QuadricKind,
    pub n_marked: u32,
    pub twist: Partition,
}

impl FamilySpec {
    pub fn new(kind: QuadricKind, twist: Partition) -> Result<Self, SieveError> {
        if twist.max_part() > 3 || twist.size() > 3 {
            return Err(SieveError::BadTwist(twist.to_string()));
        }
        Ok(FamilySpec { kind, n_marked: twist.size(), twist })
    }

    /// `n` rational marked points.
    pub fn untwisted(kind: QuadricKind, n: u32) -> Result<Self, SieveError> {
        FamilySpec::new(kind, Partition::ones(n))
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist.is_all_ones()
    }

    /// All families with tabulated terms: every kind and every twist of size at most 3.
    pub fn all() -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for kind in QuadricKind::ALL {
            for n in 0..=3 {
                for twist in partitions(n) {
                    out.push(FamilySpec { kind, n_marked: n, twist });
                }
            }
        }
        out
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.twist)
    }
}

/// A sieve term `S_d` of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SieveTermKey {
    pub family: FamilySpec,
    pub d: u32,
}

impl SieveTermKey {
    pub fn new(family: FamilySpec, d: u32) -> Self {
        SieveTermKey { family, d }
    }
}

impl fmt::Display for SieveTermKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}({})", self.d, self.family)
    }
}

/// The tabulated polynomial for `key`; rows known only to `o(q^6)` carry
/// trusted floor [`TRUNCATED_FLOOR`].
pub fn sieve_term_symbolic(key: &SieveTermKey) -> Result<TruncatedQPoly, SieveError> {
    tables::lookup(key.family.kind, &key.family.twist.key(), key.d).ok_or_else(|| SieveError::MissingKey(key.to_string()))
}

fn check_q(q: u32) -> Result<(), SieveError> {
    if SUPPORTED_Q.contains(&q) {
        Ok(())
    } else {
        Err(SieveError::UnsupportedQ(q))
    }
}

fn lcm_up_to(m: u32) -> u32 {
    (1..=m.max(1)).fold(1, num_integer::lcm)
}

/// Number of labelings of a marked configuration compatible with the twist:
/// `prod_j m_j! j^{m_j}` where `m_j` is the number of orbits of length `j`.
fn labelings(twist: &Partition) -> u64 {
    (1..=twist.max_part())
        .map(|j| {
            let m = twist.multiplicity(j) as u32;
            crate::exactalg::factorial(m) * (j as u64).pow(m)
        })
        .product()
}

/// Signed Frobenius-stable configurations of total degree `d`, as stacked
/// singularity conditions.
fn singular_configurations(model: &SurfaceModel, d: u32) -> Result<Vec<(i128, Vec<Row>)>, SieveError> {
    let mut out = Vec::new();
    for lambda in partitions(d) {
        let sign = if lambda.len() % 2 == 0 { 1 } else { -1 };
        for cfg in frobenius_orbit_configs(model, &lambda)? {
            let rows = cfg.points.iter().flat_map(|p| model.condition_rows(p)).collect();
            out.push((sign, rows));
        }
    }
    Ok(out)
}

/// `S_d` of the family over `F_q`, by summing over marked configurations and
/// Frobenius-stable singular configurations `Z` of degree `d`.
pub fn sieve_term_numeric(key: &SieveTermKey, q: u32) -> Result<i128, SieveError> {
    check_q(q)?;
    if key.d > MAX_SIEVE_DEGREE {
        return Err(SieveError::DegreeOutOfRange(key.d));
    }
    let fam = &key.family;
    let model = SurfaceModel::new(fam.kind, q, lcm_up_to(key.d.max(fam.twist.max_part())))?;
    let marked = frobenius_orbit_configs(&model, &fam.twist)?;
    let zs = singular_configurations(&model, key.d)?;
    let mult = labelings(&fam.twist) as i128;
    let total: i128 = marked
        .par_iter()
        .map(|m| {
            let mut base = Echelon::new(model.tables().clone());
            for p in &m.points {
                base.insert(&model.value_row(p));
            }
            zs.iter()
                .map(|(sign, rows)| {
                    let mut e = base.clone();
                    e.extend(rows.iter());
                    sign * count_fibers(fam.kind, q as u64, &e)
                })
                .sum::<i128>()
        })
        .sum();
    Ok(total * mult)
}

/// `N[k] = sum_{d <= k} S_d`, the truncated count of smooth members of the family.
pub fn truncated_smooth_count(family: &FamilySpec, k: u32, q: u32) -> Result<i128, SieveError> {
    (0..=k).map(|d| sieve_term_numeric(&SieveTermKey::new(family.clone(), d), q)).sum()
}

/// Frobenius-stable subsets of the quadric of orbit type `lambda`.
pub fn orbit_configurations(kind: QuadricKind, q: u32, lambda: &Partition) -> Result<Vec<OrbitConfig>, SieveError> {
    let model = SurfaceModel::new(kind, q, lambda.lcm())?;
    Ok(frobenius_orbit_configs(&model, lambda)?)
}

/// Signed counts of Frobenius-stable 4-point sets on the split quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleCounts {
    /// `sum_lambda (-1)^{l(lambda)} #{sets of type lambda in general position}`.
    pub general_position: i128,
    /// The same sum over all sets.
    pub all: i128,
}

/// Signed Hasse-Weil counts of 4-point sets on the split quadric, with and
/// without the general position constraint.
pub fn signed_quadruple_counts(q: u32) -> Result<QuadrupleCounts, SieveError> {
    check_q(q)?;
    let mut gp = 0i128;
    let mut all = 0i128;
    for lambda in partitions(4) {
        let sign = if lambda.len() % 2 == 0 { 1 } else { -1 };
        let model = SurfaceModel::new(QuadricKind::Split, q, lambda.lcm())?;
        let configs = frobenius_orbit_configs(&model, &lambda)?;
        let good = configs.par_iter().filter(|c| geometry_predicates(&model, &c.points).general_position).count();
        gp += sign * good as i128;
        all += sign * configs.len() as i128;
    }
    Ok(QuadrupleCounts { general_position: gp, all })
}

/// Signed Hasse-Weil count of 4-point sets in general position on the split quadric.
pub fn signed_general_position_quadruples(q: u32) -> Result<i128, SieveError> {
    Ok(signed_quadruple_counts(q)?.general_position)
}

/// Closed form `(q+1)^2 q^2 (q-1)^2` of the general position count.
pub fn general_position_closed_form(q: i128) -> i128 {
    (q + 1).pow(2) * q.pow(2) * (q - 1).pow(2)
}

/// Points of the working model used for a numeric term, for inspection.
pub fn marked_configurations(family: &FamilySpec, q: u32) -> Result<Vec<Vec<Pt>>, SieveError> {
    check_q(q)?;
    let model = SurfaceModel::new(family.kind, q, lcm_up_to(family.twist.max_part()))?;
    Ok(frobenius_orbit_configs(&model, &family.twist)?.into_iter().map(|c| c.points).collect())
}
