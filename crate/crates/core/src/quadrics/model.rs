use std::sync::{Arc, OnceLock};

use super::linear::{Row, NCOLS};
use super::{QuadricError, QuadricKind, SurfacePoint};
use crate::finitefield::{prime_power, FieldTables, MAX_FIELD_SIZE};

/// A geometric point in compact form.
///
/// Cone: chart 0 is `(1, a, b)`, chart 1 is `(0, 1, b)` with `a = 0`.
/// Split and nonsplit: `a` and `b` are points of `P^1`, a code `c` below the
/// field size meaning `[1 : c]` and the field size itself meaning `[0 : 1]`;
/// the chart records which coordinates are at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub chart: u8,
    pub a: u32,
    pub b: u32,
}

/// A closed point: a Frobenius orbit starting at its smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub degree: u32,
    pub orbit: Vec<Pt>,
}

const MAX_CLOSED_DEGREE: u32 = 4;

/// A quadric over `F_q` with all point arithmetic done in one working field
/// large enough to hold every point of degree dividing `k`.
pub struct SurfaceModel {
    kind: QuadricKind,
    q: u32,
    e: u32,
    k: u32,
    tables: Arc<FieldTables>,
    inf: u32,
    closed: Vec<OnceLock<Vec<ClosedPoint>>>,
}

fn cone_exponents() -> [(u32, u32, u32); NCOLS] {
    let mut out = [(0, 0, 0); NCOLS];
    let mut i = 0;
    for c in 0..=3u32 {
        for b in 0..=(6 - 2 * c) {
            out[i] = (6 - 2 * c - b, b, c);
            i += 1;
        }
    }
    out
}

impl SurfaceModel {
    /// Model whose working field contains the points of every degree dividing `k`.
    pub fn new(kind: QuadricKind, q: u32, k: u32) -> Result<Self, QuadricError> {
        let (p, e) = prime_power(q)?;
        if k == 0 {
            return Err(QuadricError::Unsupported { q, k });
        }
        let w = match kind {
            QuadricKind::Nonsplit => num_integer::lcm(2, k),
            _ => k,
        };
        let deg = e * w;
        if (p as u64).checked_pow(deg).is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(QuadricError::Unsupported { q, k });
        }
        let tables = FieldTables::get(p, deg)?;
        let inf = tables.size();
        let closed = (0..=MAX_CLOSED_DEGREE).map(|_| OnceLock::new()).collect();
        Ok(SurfaceModel { kind, q, e, k, tables, inf, closed })
    }

    pub fn kind(&self) -> QuadricKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn tables(&self) -> &Arc<FieldTables> {
        &self.tables
    }

    /// Code standing for the point at infinity of `P^1`.
    pub fn infinity(&self) -> u32 {
        self.inf
    }

    /// Column of the monomial `y^3`, nonvanishing at the cone vertex.
    pub fn vertex_column(&self) -> Option<usize> {
        match self.kind {
            QuadricKind::Cone => Some(NCOLS - 1),
            _ => None,
        }
    }

    fn fq(&self, a: u32, j: u32) -> u32 {
        if a == self.inf {
            a
        } else {
            self.tables.frob(a, self.e * j)
        }
    }

    fn chart_of(&self, a: u32, b: u32) -> u8 {
        (a == self.inf) as u8 | (((b == self.inf) as u8) << 1)
    }

    fn split_pt(&self, a: u32, b: u32) -> Pt {
        Pt { chart: self.chart_of(a, b), a, b }
    }

    /// The `F_q`-Frobenius, twisted by the factor swap for the nonsplit quadric.
    pub fn frobenius(&self, pt: &Pt) -> Pt {
        match self.kind {
            QuadricKind::Cone => Pt { chart: pt.chart, a: self.fq(pt.a, 1), b: self.fq(pt.b, 1) },
            QuadricKind::Split => self.split_pt(self.fq(pt.a, 1), self.fq(pt.b, 1)),
            QuadricKind::Nonsplit => self.split_pt(self.fq(pt.b, 1), self.fq(pt.a, 1)),
        }
    }

    /// Smallest `d >= 1` with `F^d(pt) = pt`.
    pub fn exact_degree(&self, pt: &Pt) -> u32 {
        let mut d = 1;
        let mut cur = self.frobenius(pt);
        while cur != *pt {
            cur = self.frobenius(&cur);
            d += 1;
        }
        d
    }

    fn check_degree(&self, d: u32) -> Result<(), QuadricError> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(QuadricError::DegreeOutOfRange { d, k: self.k });
        }
        Ok(())
    }

    /// All points fixed by `F^d`, sorted.
    pub fn points_dividing(&self, d: u32) -> Result<Vec<Pt>, QuadricError> {
        self.check_degree(d)?;
        let t = &self.tables;
        let mut out = Vec::new();
        match self.kind {
            QuadricKind::Cone => {
                let sub = t.subfield(self.e * d);
                for &u in &sub {
                    for &y in &sub {
                        out.push(Pt { chart: 0, a: u, b: y });
                    }
                }
                for &y in &sub {
                    out.push(Pt { chart: 1, a: 0, b: y });
                }
            }
            QuadricKind::Split => {
                let line = self.p1(d);
                for &a in &line {
                    for &b in &line {
                        out.push(self.split_pt(a, b));
                    }
                }
            }
            QuadricKind::Nonsplit if d.is_multiple_of(2) => {
                let line = self.p1(d);
                for &a in &line {
                    for &b in &line {
                        out.push(self.split_pt(a, b));
                    }
                }
            }
            QuadricKind::Nonsplit => {
                for a in self.p1(2 * d) {
                    out.push(self.split_pt(a, self.fq(a, d)));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn p1(&self, d: u32) -> Vec<u32> {
        let mut v = self.tables.subfield(self.e * d);
        v.push(self.inf);
        v
    }

    /// Closed points of degree exactly `d` (cached, `d <= 4`).
    pub fn closed_points(&self, d: u32) -> Result<&[ClosedPoint], QuadricError> {
        self.check_degree(d)?;
        if d > MAX_CLOSED_DEGREE {
            return Err(QuadricError::DegreeOutOfRange { d, k: self.k });
        }
        if let Some(v) = self.closed[d as usize].get() {
            return Ok(v);
        }
        let mut out = Vec::new();
        for pt in self.points_dividing(d)? {
            if self.exact_degree(&pt) != d {
                continue;
            }
            let mut orbit = vec![pt];
            let mut cur = self.frobenius(&pt);
            while cur != pt {
                orbit.push(cur);
                cur = self.frobenius(&cur);
            }
            if orbit.iter().all(|o| *o >= pt) {
                out.push(ClosedPoint { degree: d, orbit });
            }
        }
        Ok(self.closed[d as usize].get_or_init(|| out))
    }

    /// Conditions for a section to vanish at `pt`: one row per coefficient.
    pub fn value_row(&self, pt: &Pt) -> Row {
        self.condition_rows(pt)[0]
    }

    /// Rows for the value and the two local partial derivatives at `pt`;
    /// their span is the space of conditions for the section to be singular there.
    pub fn condition_rows(&self, pt: &Pt) -> [Row; 3] {
        let t = &self.tables;
        let mut rows = [[0u32; NCOLS]; 3];
        match self.kind {
            QuadricKind::Cone => {
                let ex = cone_exponents();
                for (col, &(a, b, c)) in ex.iter().enumerate() {
                    if pt.chart == 0 {
                        let (u, y) = (pt.a, pt.b);
                        let ub = t.pow(u, b as u64);
                        let yc = t.pow(y, c as u64);
                        rows[0][col] = t.mul(ub, yc);
                        if b > 0 {
                            rows[1][col] = t.mul(t.from_int(b as i64), t.mul(t.pow(u, b as u64 - 1), yc));
                        }
                        if c > 0 {
                            rows[2][col] = t.mul(t.from_int(c as i64), t.mul(ub, t.pow(y, c as u64 - 1)));
                        }
                    } else {
                        let y = pt.b;
                        if a == 0 {
                            rows[0][col] = t.pow(y, c as u64);
                            if c > 0 {
                                rows[2][col] = t.mul(t.from_int(c as i64), t.pow(y, c as u64 - 1));
                            }
                        }
                        if a == 1 {
                            rows[1][col] = t.pow(y, c as u64);
                        }
                    }
                }
            }
            QuadricKind::Split | QuadricKind::Nonsplit => {
                let fa = self.factor_values(pt.a);
                let fb = self.factor_values(pt.b);
                for i in 0..4 {
                    for j in 0..4 {
                        let col = 4 * i + j;
                        rows[0][col] = t.mul(fa[i].0, fb[j].0);
                        rows[1][col] = t.mul(fa[i].1, fb[j].0);
                        rows[2][col] = t.mul(fa[i].0, fb[j].1);
                    }
                }
            }
        }
        rows
    }

    /// Value and derivative of `x0^(3-i) x1^i` in the local coordinate at a point of `P^1`.
    fn factor_values(&self, a: u32) -> [(u32, u32); 4] {
        let t = &self.tables;
        let mut out = [(0, 0); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let (tv, ex) = if a == self.inf { (0, 3 - i as u64) } else { (a, i as u64) };
            let val = t.pow(tv, ex);
            let der = if ex == 0 { 0 } else { t.mul(t.from_int(ex as i64), t.pow(tv, ex - 1)) };
            *slot = (val, der);
        }
        out
    }

    /// Homogeneous coordinates of `pt` as field elements.
    pub fn homogeneous(&self, pt: &Pt) -> Vec<u32> {
        match self.kind {
            QuadricKind::Cone if pt.chart == 0 => vec![1, pt.a, pt.b],
            QuadricKind::Cone => vec![0, 1, pt.b],
            _ => {
                let f = |c: u32| if c == self.inf { [0, 1] } else { [1, c] };
                let (x, y) = (f(pt.a), f(pt.b));
                vec![x[0], x[1], y[0], y[1]]
            }
        }
    }

    pub fn to_surface_point(&self, pt: &Pt) -> SurfacePoint {
        let coords = self.homogeneous(pt).into_iter().map(|c| self.tables.to_element(c)).collect();
        SurfacePoint { kind: self.kind, chart: pt.chart, coords }
    }

    /// Inverse of [`SurfaceModel::to_surface_point`] for points of this model.
    pub fn from_surface_point(&self, sp: &SurfacePoint) -> Result<Pt, QuadricError> {
        let c: Vec<u32> = sp
            .coords
            .iter()
            .map(|x| self.tables.from_element(x))
            .collect::<Result<_, _>>()?;
        let bad = || QuadricError::Unsupported { q: self.q, k: self.k };
        let norm = |x0: u32, x1: u32| -> Result<u32, QuadricError> {
            match (x0, x1) {
                (0, 0) => Err(bad()),
                (0, _) => Ok(self.inf),
                _ => Ok(self.tables.div(x1, x0)),
            }
        };
        match self.kind {
            QuadricKind::Cone => {
                if c.len() != 3 {
                    return Err(bad());
                }
                let (x0, x1, y) = (c[0], c[1], c[2]);
                if x0 != 0 {
                    let u = self.tables.div(x1, x0);
                    let v = self.tables.div(y, self.tables.mul(x0, x0));
                    Ok(Pt { chart: 0, a: u, b: v })
                } else if x1 != 0 {
                    Ok(Pt { chart: 1, a: 0, b: self.tables.div(y, self.tables.mul(x1, x1)) })
                } else {
                    Err(QuadricError::Vertex)
                }
            }
            _ => {
                if c.len() != 4 {
                    return Err(bad());
                }
                Ok(self.split_pt(norm(c[0], c[1])?, norm(c[2], c[3])?))
            }
        }
    }

    /// `#Q(F_{q^d})` by enumeration (vertex excluded for the cone).
    pub fn count_points(&self, d: u32) -> Result<usize, QuadricError> {
        Ok(self.points_dividing(d)?.len())
    }
}
