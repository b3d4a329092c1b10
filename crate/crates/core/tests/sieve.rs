use std::collections::BTreeMap;

use mcount_core::exactalg::{eval_i128, partitions, Partition};
use mcount_core::quadrics::{QuadricKind, Row, SurfaceModel, NCOLS};
use mcount_core::sieve::{
    general_position_closed_form, orbit_configurations, sieve_term_numeric, sieve_term_symbolic,
    signed_quadruple_counts, truncated_smooth_count, FamilySpec, SieveTermKey, TRUNCATED_FLOOR,
};

const RESIDUE_BOUND: i128 = 64;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn key(kind: QuadricKind, twist: &str, d: u32) -> SieveTermKey {
    SieveTermKey::new(FamilySpec::new(kind, p(twist)).unwrap(), d)
}

fn trusted_value(key: &SieveTermKey, q: i128) -> i128 {
    sieve_term_symbolic(key)
        .unwrap()
        .terms()
        .map(|(e, c)| i128::try_from(c.to_integer()).unwrap() * q.pow(e as u32))
        .sum()
}

fn check_family(fam: &FamilySpec, q: u32) {
    for d in 0..=3 {
        let k = SieveTermKey::new(fam.clone(), d);
        let num = sieve_term_numeric(&k, q).unwrap();
        let sym = sieve_term_symbolic(&k).unwrap();
        if sym.is_exact() {
            assert_eq!(Some(num), eval_i128(&sym, q as i64), "{k} at q={q}");
        } else {
            let floor = sym.floor().unwrap();
            assert_eq!(floor, TRUNCATED_FLOOR);
            let resid = num - trusted_value(&k, q as i128);
            assert!(resid.abs() < RESIDUE_BOUND * (q as i128).pow(floor as u32), "{k} residue {resid} at q={q}");
        }
    }
}

#[test]
fn numeric_terms_match_tables_at_q2() {
    for fam in FamilySpec::all() {
        check_family(&fam, 2);
    }
}

#[test]
fn numeric_terms_match_tables_at_q3() {
    for fam in FamilySpec::all() {
        if fam.kind == QuadricKind::Split && fam.n_marked == 3 {
            continue;
        }
        check_family(&fam, 3);
    }
}

#[test]
fn truncated_rows_are_pinned_at_q2() {
    let pinned: &[(QuadricKind, &str, u32, i128)] = &[
        (QuadricKind::Nonsplit, "2", 3, 31600),
        (QuadricKind::Nonsplit, "3", 0, 491460),
        (QuadricKind::Nonsplit, "3", 1, -306900),
        (QuadricKind::Nonsplit, "3", 3, 14160),
        (QuadricKind::Nonsplit, "2,1", 3, 90160),
        (QuadricKind::Split, "1", 2, 165636),
        (QuadricKind::Split, "1", 3, -31932),
        (QuadricKind::Split, "2", 0, 262128),
        (QuadricKind::Split, "2", 1, -294768),
        (QuadricKind::Split, "2", 2, 129600),
        (QuadricKind::Split, "2", 3, -29376),
        (QuadricKind::Split, "1,1", 2, 836640),
        (QuadricKind::Split, "1,1", 3, -197856),
        (QuadricKind::Split, "3", 0, 589752),
        (QuadricKind::Split, "3", 1, -773496),
        (QuadricKind::Split, "3", 2, 403488),
        (QuadricKind::Split, "3", 3, -103392),
        (QuadricKind::Split, "2,1", 0, 1179504),
        (QuadricKind::Split, "2,1", 1, -1546992),
        (QuadricKind::Split, "2,1", 2, 811584),
        (QuadricKind::Split, "2,1", 3, -220608),
        (QuadricKind::Split, "1,1,1", 1, -6188616),
        (QuadricKind::Split, "1,1,1", 2, 3640032),
        (QuadricKind::Split, "1,1,1", 3, -1055520),
    ];
    for &(kind, twist, d, value) in pinned {
        let k = key(kind, twist, d);
        assert!(!sieve_term_symbolic(&k).unwrap().is_exact(), "{k}");
        assert_eq!(sieve_term_numeric(&k, 2).unwrap(), value, "{k}");
    }
}

#[test]
fn named_examples() {
    assert_eq!(sieve_term_numeric(&key(QuadricKind::Cone, "", 2), 2).unwrap(), 4096);
    for q in [2, 3] {
        assert_eq!(sieve_term_numeric(&key(QuadricKind::Nonsplit, "", 2), q).unwrap(), 0);
    }
    assert_eq!(sieve_term_numeric(&key(QuadricKind::Cone, "2", 0), 2).unwrap(), 114688);
    let cone3 = sieve_term_symbolic(&key(QuadricKind::Cone, "1,1,1", 3)).unwrap();
    assert!(cone3.is_exact());
    assert_eq!(cone3.to_string(), "-3q^13 + 5q^12 - 5q^11 + 7q^10 + 2q^9 - 12q^8 + 6q^7");
    assert!(sieve_term_symbolic(&key(QuadricKind::Split, "1,1,1", 2)).unwrap().floor() == Some(TRUNCATED_FLOOR));
}

#[test]
fn truncated_smooth_counts() {
    let untwisted = |kind| FamilySpec::untwisted(kind, 0).unwrap();
    assert_eq!(truncated_smooth_count(&untwisted(QuadricKind::Cone), 3, 2).unwrap(), 12288);
    let pn = |n: u32| 2i128.pow(n + 1) - 1;
    assert_eq!(truncated_smooth_count(&untwisted(QuadricKind::Nonsplit), 3, 2).unwrap(), pn(15) - 5 * pn(12) + 20 * pn(6));
    assert_eq!(truncated_smooth_count(&untwisted(QuadricKind::Split), 0, 3).unwrap(), (3i128.pow(16) - 1) / 2);
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn orbit_type_completeness() {
    for kind in QuadricKind::ALL {
        let model = SurfaceModel::new(kind, 2, 12).unwrap();
        let closed: Vec<usize> = (0..=4).map(|d| if d == 0 { 0 } else { model.closed_points(d).unwrap().len() }).collect();
        for d in 1..=4u32 {
            let mut by_type = 0usize;
            for lambda in partitions(d) {
                let n = orbit_configurations(kind, 2, &lambda).unwrap().len();
                let expected: usize = (1..=4).map(|j| binomial(closed[j as usize], lambda.multiplicity(j))).product();
                assert_eq!(n, expected, "{kind} {lambda}");
                by_type += n;
            }
            // direct count: coefficient of t^d in prod_j (1 + t^j)^{closed_j}
            let mut poly = vec![0usize; d as usize + 1];
            poly[0] = 1;
            for j in 1..=d as usize {
                for _ in 0..closed[j] {
                    for e in (j..=d as usize).rev() {
                        poly[e] += poly[e - j];
                    }
                }
            }
            assert_eq!(by_type, poly[d as usize], "{kind} d={d}");
        }
    }
}

#[test]
fn quadruple_counts() {
    let q2 = signed_quadruple_counts(2).unwrap();
    assert_eq!(q2.general_position, 36);
    assert_eq!(q2.general_position, general_position_closed_form(2));
    assert_eq!(q2.all, 16);
    let q3 = signed_quadruple_counts(3).unwrap();
    assert_eq!(q3.general_position, general_position_closed_form(3));
    assert_eq!(q3.general_position, 576);
    assert_eq!(q3.all, 81);
}

/// Runs over every section of the family, finds its singular closed points of
/// degree at most 3, and accumulates `sum over subsets Z of degree d of (-1)^|Z|`.
fn brute_force_terms(kind: QuadricKind, marked: bool) -> [i128; 4] {
    let q = 2u32;
    let model = SurfaceModel::new(kind, q, 6).unwrap();
    let t = model.tables().clone();
    let mut closed: Vec<(u32, [Row; 3])> = Vec::new();
    for d in 1..=3 {
        for c in model.closed_points(d).unwrap() {
            closed.push((d, model.condition_rows(&c.orbit[0])));
        }
    }
    let rational: Vec<Row> = model.points_dividing(1).unwrap().iter().map(|x| model.value_row(x)).collect();
    let dot = |row: &Row, f: u32| -> u32 {
        (0..NCOLS).filter(|&i| f >> i & 1 == 1).fold(0, |acc, i| t.add(acc, row[i]))
    };
    let sections: Vec<u32> = match kind {
        QuadricKind::Cone => (0..1u32 << 15).map(|f| f | 1 << 15).collect(),
        _ => (1..1u32 << 16).collect(),
    };
    let mut out = [0i128; 4];
    for f in sections {
        let weight = if marked { rational.iter().filter(|r| dot(r, f) == 0).count() as i128 } else { 1 };
        if weight == 0 {
            continue;
        }
        let mut poly = [1i128, 0, 0, 0];
        for (d, rows) in &closed {
            if rows.iter().all(|r| dot(r, f) == 0) {
                for e in (*d as usize..4).rev() {
                    poly[e] -= poly[e - *d as usize];
                }
            }
        }
        for d in 0..4 {
            out[d] += weight * poly[d];
        }
    }
    out
}

#[test]
fn brute_force_over_all_sections() {
    for (kind, twist) in [
        (QuadricKind::Split, ""),
        (QuadricKind::Split, "1"),
        (QuadricKind::Cone, ""),
        (QuadricKind::Cone, "1"),
    ] {
        let oracle = brute_force_terms(kind, !twist.is_empty());
        for d in 0..=3 {
            let k = key(kind, twist, d);
            assert_eq!(sieve_term_numeric(&k, 2).unwrap(), oracle[d as usize], "{k}");
        }
    }
}

#[test]
fn numeric_terms_are_deterministic() {
    let k = key(QuadricKind::Split, "2,1", 2);
    let a = sieve_term_numeric(&k, 2).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool.install(|| sieve_term_numeric(&k, 2).unwrap());
    assert_eq!(a, b);
    let mut seen = BTreeMap::new();
    for fam in FamilySpec::all() {
        seen.insert(fam.to_string(), ());
    }
    assert_eq!(seen.len(), 3 * 7);
}

#[test]
fn errors() {
    assert!(sieve_term_numeric(&key(QuadricKind::Split, "", 4), 2).is_err());
    assert!(sieve_term_numeric(&key(QuadricKind::Split, "", 1), 7).is_err());
    assert!(FamilySpec::new(QuadricKind::Split, p("4")).is_err());
    assert!(sieve_term_symbolic(&SieveTermKey::new(FamilySpec::untwisted(QuadricKind::Cone, 0).unwrap(), 5)).is_err());
}
