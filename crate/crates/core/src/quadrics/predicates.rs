use serde::{Deserialize, Serialize};

use super::model::{Pt, SurfaceModel};
use super::QuadricKind;

/// Incidence properties of a finite set of points on a quadric.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFlags {
    /// Some two points lie on a common line of the surface.
    pub shares_ruling: bool,
    /// All points on one line of the first family (cone: one line through the vertex).
    pub common_first_ruling: bool,
    /// All points on one line of the second family (never for the cone).
    pub common_second_ruling: bool,
    /// The images in `P^3` span at most a line.
    pub collinear: bool,
    /// The images in `P^3` span at most a plane, equivalently they lie on a
    /// hyperplane section (a curve of type `(1,1)` on the smooth quadrics).
    pub coplanar: bool,
    pub on_11_curve: bool,
    /// No two points on a common line and not coplanar.
    pub general_position: bool,
}

fn rank4(model: &SurfaceModel, rows: &[[u32; 4]]) -> usize {
    let t = model.tables();
    let mut basis: Vec<(usize, [u32; 4])> = Vec::new();
    for r in rows {
        let mut v = *r;
        for (piv, b) in &basis {
            let c = v[*piv];
            if c != 0 {
                for j in 0..4 {
                    v[j] = t.sub(v[j], t.mul(c, b[j]));
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = t.inv(v[piv]);
            for x in v.iter_mut() {
                *x = t.mul(*x, inv);
            }
            basis.push((piv, v));
        }
    }
    basis.len()
}

fn embed(model: &SurfaceModel, pt: &Pt) -> [u32; 4] {
    let t = model.tables();
    let h = model.homogeneous(pt);
    match model.kind() {
        QuadricKind::Cone => [t.mul(h[0], h[0]), t.mul(h[0], h[1]), t.mul(h[1], h[1]), h[2]],
        _ => [t.mul(h[0], h[2]), t.mul(h[0], h[3]), t.mul(h[1], h[2]), t.mul(h[1], h[3])],
    }
}

/// Rulings through `pt`: the `P^1` coordinates for the smooth quadrics,
/// the slope `[x0 : x1]` for the cone.
fn rulings(model: &SurfaceModel, pt: &Pt) -> (u32, Option<u32>) {
    match model.kind() {
        QuadricKind::Cone if pt.chart == 0 => (pt.a, None),
        QuadricKind::Cone => (model.infinity(), None),
        _ => (pt.a, Some(pt.b)),
    }
}

/// Incidence flags of a set of distinct points.
pub fn geometry_predicates(model: &SurfaceModel, pts: &[Pt]) -> GeometryFlags {
    let r: Vec<(u32, Option<u32>)> = pts.iter().map(|p| rulings(model, p)).collect();
    let mut shares = false;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if r[i].0 == r[j].0 || (r[i].1.is_some() && r[i].1 == r[j].1) {
                shares = true;
            }
        }
    }
    let first = !r.is_empty() && r.iter().all(|x| x.0 == r[0].0);
    let second = !r.is_empty() && r[0].1.is_some() && r.iter().all(|x| x.1 == r[0].1);
    let images: Vec<[u32; 4]> = pts.iter().map(|p| embed(model, p)).collect();
    let rank = rank4(model, &images);
    GeometryFlags {
        shares_ruling: shares,
        common_first_ruling: first,
        common_second_ruling: second,
        collinear: rank <= 2,
        coplanar: rank <= 3,
        on_11_curve: rank <= 3,
        general_position: !shares && rank == 4,
    }
}
