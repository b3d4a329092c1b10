use std::sync::Arc;

use super::QuadricKind;
use crate::finitefield::FieldTables;

/// Number of coefficients of a cubic section.
pub const NCOLS: usize = 16;

/// One linear condition on the coefficients of a cubic section.
pub type Row = [u32; NCOLS];

/// Incremental row echelon form over the working field.
#[derive(Clone)]
pub struct Echelon {
    tables: Arc<FieldTables>,
    rows: Vec<(usize, Row)>,
}

impl Echelon {
    pub fn new(tables: Arc<FieldTables>) -> Self {
        Echelon { tables, rows: Vec::with_capacity(NCOLS) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &Row) -> Row {
        let t = &self.tables;
        let mut v = *row;
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for j in *piv..NCOLS {
                if r[j] != 0 {
                    v[j] = t.sub(v[j], t.mul(c, r[j]));
                }
            }
        }
        v
    }

    /// Adds a row; returns whether the rank went up.
    pub fn insert(&mut self, row: &Row) -> bool {
        if self.rows.len() == NCOLS {
            return false;
        }
        let mut v = self.reduce(row);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let t = &self.tables;
        let inv = t.inv(v[piv]);
        for x in v.iter_mut().skip(piv) {
            *x = t.mul(*x, inv);
        }
        self.rows.push((piv, v));
        true
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a Row>>(&mut self, rows: I) {
        for r in rows {
            self.insert(r);
        }
    }

    /// Whether `row` lies in the span.
    pub fn contains(&self, row: &Row) -> bool {
        self.reduce(row).iter().all(|&x| x == 0)
    }

    /// Whether the unit vector of column `col` lies in the span.
    pub fn contains_unit(&self, col: usize) -> bool {
        let mut e = [0u32; NCOLS];
        e[col] = 1;
        self.contains(&e)
    }
}

/// A set of linear conditions attached to a quadric kind.
#[derive(Clone)]
pub struct LinearConditions {
    pub kind: QuadricKind,
    pub rows: Vec<Row>,
    pub tables: Arc<FieldTables>,
}

impl LinearConditions {
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.tables.clone());
        e.extend(self.rows.iter());
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

/// Number of `F_q`-points of the parameter space of sections satisfying the
/// conditions in `ech`.
///
/// Projective kinds count lines in the solution space, `(q^(16-r) - 1)/(q - 1)`.
/// For the cone the parameter space is the affine chart where the `y^3`
/// coefficient is 1: empty when that coefficient is forced to vanish, otherwise
/// an affine space of dimension `15 - r`.
pub fn count_fibers(kind: QuadricKind, q: u64, ech: &Echelon) -> i128 {
    let r = ech.rank() as u32;
    let q = q as i128;
    match kind {
        QuadricKind::Cone => {
            if ech.contains_unit(NCOLS - 1) {
                0
            } else {
                q.pow(15 - r)
            }
        }
        _ => (q.pow(16 - r) - 1) / (q - 1),
    }
}
