use mcount_core::exactalg::Partition;
use mcount_core::finitefield::mobius;
use mcount_core::quadrics::{
    count_fibers, enumerate_points, frobenius_orbit_configs, geometry_predicates, Echelon, QuadricKind, SurfaceModel,
    NCOLS,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn expected_points(kind: QuadricKind, q: i64, d: u32) -> i64 {
    let qd = q.pow(d);
    match kind {
        QuadricKind::Cone => qd * qd + qd,
        QuadricKind::Split => (qd + 1) * (qd + 1),
        QuadricKind::Nonsplit => qd * qd + 1 + if d.is_multiple_of(2) { 2 * qd } else { 0 },
    }
}

#[test]
fn point_counts_over_extensions() {
    for kind in QuadricKind::ALL {
        for q in [2u32, 3, 4, 5] {
            let model = SurfaceModel::new(kind, q, 2).unwrap();
            for d in [1, 2] {
                assert_eq!(model.count_points(d).unwrap() as i64, expected_points(kind, q as i64, d), "{kind} q={q} d={d}");
            }
        }
        let model = SurfaceModel::new(kind, 2, 12).unwrap();
        for d in [3, 4] {
            assert_eq!(model.count_points(d).unwrap() as i64, expected_points(kind, 2, d));
        }
    }
}

#[test]
fn closed_point_counts_follow_mobius_inversion() {
    for kind in QuadricKind::ALL {
        let model = SurfaceModel::new(kind, 2, 12).unwrap();
        for d in 1..=4u32 {
            let n: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * expected_points(kind, 2, e)).sum();
            let closed = model.closed_points(d).unwrap();
            assert_eq!(closed.len() as i64, n / d as i64, "{kind} d={d}");
            for c in closed {
                assert_eq!(c.orbit.len() as u32, d);
                assert_eq!(model.frobenius(c.orbit.last().unwrap()), c.orbit[0]);
                assert!(c.orbit.iter().all(|x| model.exact_degree(x) == d));
            }
        }
    }
}

#[test]
fn configuration_counts_on_split_quadric() {
    let model = SurfaceModel::new(QuadricKind::Split, 2, 6).unwrap();
    assert_eq!(frobenius_orbit_configs(&model, &p("1")).unwrap().len(), 9);
    assert_eq!(frobenius_orbit_configs(&model, &p("3")).unwrap().len(), 24);
    assert_eq!(frobenius_orbit_configs(&model, &p("1,1")).unwrap().len(), 36);
    assert_eq!(frobenius_orbit_configs(&model, &p("2")).unwrap().len(), 8);
    assert_eq!(frobenius_orbit_configs(&model, &p("2,1")).unwrap().len(), 9 * 8);
    for cfg in frobenius_orbit_configs(&model, &p("2,1")).unwrap() {
        let mut pts = cfg.points.clone();
        pts.sort();
        pts.dedup();
        assert_eq!(pts.len(), 3);
    }
}

#[test]
fn surface_points_round_trip() {
    for kind in QuadricKind::ALL {
        let model = SurfaceModel::new(kind, 3, 2).unwrap();
        for pt in model.points_dividing(2).unwrap() {
            assert_eq!(model.from_surface_point(&model.to_surface_point(&pt)).unwrap(), pt);
        }
        assert_eq!(enumerate_points(kind, 3, 1).unwrap().len() as i64, expected_points(kind, 3, 1));
    }
}

fn monomial_values(model: &SurfaceModel, pt: &mcount_core::quadrics::Pt) -> Vec<u32> {
    let t = model.tables();
    let h = model.homogeneous(pt);
    let mut out = Vec::new();
    match model.kind() {
        QuadricKind::Cone => {
            for c in 0..=3u64 {
                for b in 0..=(6 - 2 * c) {
                    let a = 6 - 2 * c - b;
                    out.push(t.mul(t.mul(t.pow(h[0], a), t.pow(h[1], b)), t.pow(h[2], c)));
                }
            }
        }
        _ => {
            for i in 0..4u64 {
                for j in 0..4u64 {
                    let x = t.mul(t.pow(h[0], 3 - i), t.pow(h[1], i));
                    let y = t.mul(t.pow(h[2], 3 - j), t.pow(h[3], j));
                    out.push(t.mul(x, y));
                }
            }
        }
    }
    out
}

fn proportional(a: &[u32], b: &[u32], model: &SurfaceModel) -> bool {
    let t = model.tables();
    let Some(i) = a.iter().position(|&x| x != 0) else { return b.iter().all(|&x| x == 0) };
    if b[i] == 0 {
        return false;
    }
    let r = t.div(b[i], a[i]);
    a.iter().zip(b).all(|(&x, &y)| t.mul(x, r) == y)
}

#[test]
fn value_rows_are_monomial_evaluations() {
    for kind in QuadricKind::ALL {
        let model = SurfaceModel::new(kind, 3, 2).unwrap();
        for pt in model.points_dividing(2).unwrap() {
            let row = model.value_row(&pt);
            let oracle = monomial_values(&model, &pt);
            assert!(proportional(&oracle, &row, &model), "{kind} {pt:?}");
        }
    }
}

#[test]
fn rational_points_impose_independent_conditions() {
    for (q, expected) in [(2u32, 9usize), (3, 16)] {
        let model = SurfaceModel::new(QuadricKind::Split, q, 1).unwrap();
        let mut e = Echelon::new(model.tables().clone());
        for pt in model.points_dividing(1).unwrap() {
            e.insert(&model.value_row(&pt));
        }
        assert_eq!(e.rank(), expected);
    }
    for kind in QuadricKind::ALL {
        let model = SurfaceModel::new(kind, 3, 1).unwrap();
        for pt in model.points_dividing(1).unwrap() {
            let mut e = Echelon::new(model.tables().clone());
            e.extend(model.condition_rows(&pt).iter());
            assert_eq!(e.rank(), 3, "{kind} {pt:?}");
        }
    }
}

#[test]
fn fiber_counts() {
    let model = SurfaceModel::new(QuadricKind::Split, 2, 1).unwrap();
    let e = Echelon::new(model.tables().clone());
    assert_eq!(count_fibers(QuadricKind::Split, 2, &e), (1 << 16) - 1);
    let cone = SurfaceModel::new(QuadricKind::Cone, 2, 1).unwrap();
    let mut e = Echelon::new(cone.tables().clone());
    assert_eq!(count_fibers(QuadricKind::Cone, 2, &e), 1 << 15);
    let mut unit = [0u32; NCOLS];
    unit[cone.vertex_column().unwrap()] = 1;
    e.insert(&unit);
    assert_eq!(count_fibers(QuadricKind::Cone, 2, &e), 0);
}

#[test]
fn incidence_predicates() {
    let model = SurfaceModel::new(QuadricKind::Split, 3, 1).unwrap();
    let pts = model.points_dividing(1).unwrap();
    let same_a: Vec<_> = pts.iter().filter(|x| x.a == 0).take(3).copied().collect();
    let f = geometry_predicates(&model, &same_a);
    assert!(f.shares_ruling && f.common_first_ruling && f.collinear && !f.general_position);
    let diag: Vec<_> = pts.iter().filter(|x| x.a == x.b).take(3).copied().collect();
    let f = geometry_predicates(&model, &diag);
    assert!(!f.shares_ruling && f.coplanar && !f.collinear);
    let spread: Vec<_> = [(0, 0), (1, 1), (2, 0), (0, 2)]
        .iter()
        .filter_map(|&(a, b)| pts.iter().find(|x| x.a == a && x.b == b).copied())
        .collect();
    let f = geometry_predicates(&model, &spread);
    assert!(f.shares_ruling && !f.general_position);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn echelon_rank_ignores_row_order(seed in any::<u64>(), kind_ix in 0usize..3, n in 1usize..8) {
        let kind = QuadricKind::ALL[kind_ix];
        let model = SurfaceModel::new(kind, 3, 1).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut pts = model.points_dividing(1).unwrap();
        pts.shuffle(&mut rng);
        let mut rows: Vec<_> = pts.iter().take(n).flat_map(|x| model.condition_rows(x)).collect();
        let mut a = Echelon::new(model.tables().clone());
        a.extend(rows.iter());
        rows.shuffle(&mut rng);
        let mut b = Echelon::new(model.tables().clone());
        b.extend(rows.iter());
        prop_assert_eq!(a.rank(), b.rank());
        for r in &rows {
            prop_assert!(a.contains(r));
        }
    }
}
