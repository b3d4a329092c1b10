//! Models of the three quadric surfaces, their points over extensions,
//! Frobenius orbits, and linear conditions on cubic sections.

mod linear;
mod model;
mod predicates;

pub use linear::{count_fibers, Echelon, LinearConditions, Row, NCOLS};
pub use model::{ClosedPoint, Pt, SurfaceModel};
pub use predicates::{geometry_predicates, GeometryFlags};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Partition;
use crate::finitefield::{FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadricError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unsupported parameters q = {q}, degree {k}")]
    Unsupported { q: u32, k: u32 },
    #[error("point degree {d} does not divide the model degree {k}")]
    DegreeOutOfRange { d: u32, k: u32 },
    #[error("the cone vertex is not in the smooth locus")]
    Vertex,
    #[error("unknown quadric kind {0:?}")]
    UnknownKind(String),
    #[error("orbit type {0} is not supported")]
    BadOrbitType(String),
}

/// The three reduced irreducible quadric surfaces over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricKind {
    Cone,
    Nonsplit,
    Split,
}

impl QuadricKind {
    pub const ALL: [QuadricKind; 3] = [QuadricKind::Cone, QuadricKind::Nonsplit, QuadricKind::Split];

    pub fn name(self) -> &'static str {
        match self {
            QuadricKind::Cone => "cone",
            QuadricKind::Nonsplit => "nonsplit",
            QuadricKind::Split => "split",
        }
    }

    /// Whether the parameter space of curves is `P^15` (otherwise it is the affine `A^15`).
    pub fn is_projective(self) -> bool {
        !matches!(self, QuadricKind::Cone)
    }
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadricKind {
    type Err = QuadricError;
    fn from_str(s: &str) -> Result<Self, QuadricError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cone" | "con" => Ok(QuadricKind::Cone),
            "nonsplit" | "nsp" => Ok(QuadricKind::Nonsplit),
            "split" | "spl" => Ok(QuadricKind::Split),
            other => Err(QuadricError::UnknownKind(other.to_string())),
        }
    }
}

/// A geometric point with coordinates as field elements.
///
/// Cone points are `(x0, x1, y)` in `P(1,1,2)` with chart 0 meaning `x0 = 1`
/// and chart 1 meaning `(0, 1, y)`. Split and nonsplit points are pairs of
/// points of `P^1` given by representatives `[1 : a]` or `[0 : 1]`; for the
/// nonsplit quadric these are coordinates on the split model over `F_{q^2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub kind: QuadricKind,
    pub chart: u8,
    pub coords: Vec<FieldElement>,
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{}#{}({})", self.kind, self.chart, c.join(", "))
    }
}

/// All points over `F_{q^k}`, sorted by chart and coordinate codes.
pub fn enumerate_points(kind: QuadricKind, q: u32, k: u32) -> Result<Vec<SurfacePoint>, QuadricError> {
    let model = SurfaceModel::new(kind, q, k)?;
    let pts = model.points_dividing(k)?;
    Ok(pts.iter().map(|p| model.to_surface_point(p)).collect())
}

/// A Frobenius-stable finite set of geometric points with its orbit type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitConfig {
    pub points: Vec<Pt>,
    pub orbit_type: Partition,
    pub marked_flags: Vec<bool>,
}

/// All Frobenius-stable subsets with orbit type exactly `lambda`.
pub fn frobenius_orbit_configs(model: &SurfaceModel, lambda: &Partition) -> Result<Vec<OrbitConfig>, QuadricError> {
    let mut by_degree: Vec<(u32, usize)> = Vec::new();
    for d in 1..=lambda.max_part() {
        let m = lambda.multiplicity(d);
        if m > 0 {
            by_degree.push((d, m));
        }
    }
    let mut configs: Vec<Vec<Pt>> = vec![Vec::new()];
    for (d, m) in by_degree {
        let closed = model.closed_points(d)?;
        let mut next = Vec::new();
        for base in &configs {
            for combo in combinations(closed.len(), m) {
                let mut pts = base.clone();
                for i in combo {
                    pts.extend_from_slice(&closed[i].orbit);
                }
                next.push(pts);
            }
        }
        configs = next;
    }
    Ok(configs
        .into_iter()
        .map(|points| {
            let n = points.len();
            OrbitConfig { points, orbit_type: lambda.clone(), marked_flags: vec![false; n] }
        })
        .collect())
}

/// All `m`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}
