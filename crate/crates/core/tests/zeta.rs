use mcount_core::exactalg::{int, partitions, TruncatedQPoly};
use mcount_core::quadrics::{frobenius_orbit_configs, QuadricKind, SurfaceModel};
use mcount_core::zeta::{
    inverse_zeta_coeffs, named_space, remove_rational_point, zeta_product, Eigenvalue, NamedSpace, SpaceDescriptor,
    ZetaCoeffs, DEFAULT_MAX_D,
};
use proptest::prelude::*;

fn t(terms: &[(i32, i64)]) -> TruncatedQPoly {
    TruncatedQPoly::from_terms(terms.iter().copied())
}

fn coeffs(space: NamedSpace) -> ZetaCoeffs {
    inverse_zeta_coeffs(&named_space(space), DEFAULT_MAX_D)
}

const ALL: [NamedSpace; 10] = [
    NamedSpace::Point,
    NamedSpace::A1,
    NamedSpace::A2,
    NamedSpace::Gm,
    NamedSpace::P1,
    NamedSpace::Pn(2),
    NamedSpace::Pn(3),
    NamedSpace::QconeSmooth,
    NamedSpace::Qnsp,
    NamedSpace::Qspl,
];

#[test]
fn coefficients_sum_to_zero() {
    for space in ALL {
        let desc = named_space(space);
        let z = inverse_zeta_coeffs(&desc, 12);
        let total: TruncatedQPoly = z.coeffs.iter().cloned().sum();
        if desc.proper {
            assert!(total.is_zero(), "{space}");
            let top = desc.even_eigenvalues.len();
            for d in top + 1..=12 {
                assert!(z.s(d).is_zero(), "{space} s_{d}");
            }
        } else if desc.odd_eigenvalues.is_empty() {
            assert!(!total.is_zero(), "{space}");
        }
    }
}

#[test]
fn named_examples() {
    let p1 = coeffs(NamedSpace::P1);
    assert_eq!(p1.s(1), t(&[(1, -1), (0, -1)]));
    assert_eq!(p1.s(2), t(&[(1, 1)]));
    assert!(p1.s(3).is_zero());
    let pt = coeffs(NamedSpace::Point);
    assert_eq!(pt.s(1), t(&[(0, -1)]));
    assert!(pt.s(2).is_zero());
    let nsp = coeffs(NamedSpace::Qnsp);
    assert_eq!(nsp.s(1), t(&[(2, -1), (0, -1)]));
    assert!(nsp.s(2).is_zero());
    assert_eq!(nsp.s(3), t(&[(4, 1), (2, 1)]));
    assert_eq!(nsp.s(4), t(&[(4, -1)]));
    let spl = coeffs(NamedSpace::Qspl);
    assert_eq!(spl.s(1), t(&[(2, -1), (1, -2), (0, -1)]));
    assert_eq!(spl.s(2), t(&[(3, 2), (2, 2), (1, 2)]));
    let gm = coeffs(NamedSpace::Gm);
    for d in 1..=DEFAULT_MAX_D {
        assert_eq!(gm.s(d), t(&[(1, -1), (0, 1)]));
    }
}

#[test]
fn disjoint_unions_multiply() {
    let d = DEFAULT_MAX_D;
    let p1 = coeffs(NamedSpace::P1);
    let via = zeta_product(&coeffs(NamedSpace::A1), &coeffs(NamedSpace::Point), d);
    assert_eq!(via, p1);
    let p2 = zeta_product(&zeta_product(&coeffs(NamedSpace::A2), &coeffs(NamedSpace::A1), d), &coeffs(NamedSpace::Point), d);
    assert_eq!(p2, coeffs(NamedSpace::Pn(2)));
    assert_eq!(remove_rational_point(&p1, d), coeffs(NamedSpace::A1));
    assert_eq!(remove_rational_point(&coeffs(NamedSpace::A1), d), coeffs(NamedSpace::Gm));
    let cone = zeta_product(&coeffs(NamedSpace::QconeSmooth), &coeffs(NamedSpace::Point), d);
    assert_eq!(cone.s(1), t(&[(2, -1), (1, -1), (0, -1)]));
    assert_eq!(zeta_product(&ZetaCoeffs::one(d), &p1, d), p1);
    let punctured = remove_rational_point(&coeffs(NamedSpace::QconeSmooth), d);
    assert_eq!(punctured.s(1), t(&[(2, -1), (1, -1), (0, 1)]));
    assert_eq!(punctured.s(2), t(&[(3, 1), (2, -1), (1, -1), (0, 1)]));
    let empty = remove_rational_point(&coeffs(NamedSpace::Point), d);
    assert_eq!(empty, ZetaCoeffs::one(d));
}

#[test]
fn parse_and_display() {
    for space in ALL {
        assert_eq!(space.to_string().parse::<NamedSpace>().unwrap(), space);
    }
    assert_eq!("P4".parse::<NamedSpace>().unwrap(), NamedSpace::Pn(4));
    assert!("Q7".parse::<NamedSpace>().is_err());
    assert!(Eigenvalue::new(2, 1).is_err());
}

fn signed_set_count(model: &SurfaceModel, d: u32) -> i128 {
    partitions(d)
        .iter()
        .map(|l| {
            let sign = if l.len() % 2 == 0 { 1 } else { -1 };
            sign * frobenius_orbit_configs(model, l).unwrap().len() as i128
        })
        .sum()
}

#[test]
fn sieve_identity_on_quadrics() {
    let cases = [
        (QuadricKind::Split, NamedSpace::Qspl, 2, 4),
        (QuadricKind::Nonsplit, NamedSpace::Qnsp, 2, 4),
        (QuadricKind::Split, NamedSpace::Qspl, 3, 3),
        (QuadricKind::Nonsplit, NamedSpace::Qnsp, 3, 3),
    ];
    for (kind, space, q, dmax) in cases {
        let z = coeffs(space);
        for d in 1..=dmax {
            let model = SurfaceModel::new(kind, q, partitions(d).iter().map(|l| l.lcm()).fold(1, num_lcm)).unwrap();
            assert_eq!(int(signed_set_count(&model, d) as i64), z.s(d as usize).eval(&int(q as i64)), "{kind} q={q} d={d}");
        }
    }
    let cone = coeffs(NamedSpace::QconeSmooth);
    for d in 1..=3 {
        let model = SurfaceModel::new(QuadricKind::Cone, 2, partitions(d).iter().map(|l| l.lcm()).fold(1, num_lcm)).unwrap();
        assert_eq!(int(signed_set_count(&model, d) as i64), cone.s(d as usize).eval(&int(2)));
    }
}

fn num_lcm(a: u32, b: u32) -> u32 {
    let g = (1..=a.min(b)).rev().find(|g| a.is_multiple_of(*g) && b.is_multiple_of(*g)).unwrap_or(1);
    a / g * b
}

#[test]
fn lefschetz_counts_match_enumeration() {
    for q in [2u32, 3, 4, 5] {
        for m in 1..=2 {
            let spl = SurfaceModel::new(QuadricKind::Split, q, m).unwrap();
            let nsp = SurfaceModel::new(QuadricKind::Nonsplit, q, m).unwrap();
            let cone = SurfaceModel::new(QuadricKind::Cone, q, m).unwrap();
            let qi = q as i128;
            assert_eq!(spl.count_points(m).unwrap() as i128, named_space(NamedSpace::Qspl).point_count(qi, m));
            assert_eq!(nsp.count_points(m).unwrap() as i128, named_space(NamedSpace::Qnsp).point_count(qi, m));
            assert_eq!(cone.count_points(m).unwrap() as i128, named_space(NamedSpace::QconeSmooth).point_count(qi, m));
        }
    }
}

proptest! {
    #[test]
    fn point_counts_recover_from_log_derivative(signs in prop::collection::vec((any::<bool>(), 0u32..4), 1..5), q in 2i128..6) {
        let even: Vec<Eigenvalue> = signs.iter().map(|&(s, p)| Eigenvalue { sign: if s { 1 } else { -1 }, power: p }).collect();
        let desc = SpaceDescriptor { name: "x".into(), even_eigenvalues: even, odd_eigenvalues: vec![], proper: true, dimension: 0 };
        let z = inverse_zeta_coeffs(&desc, 6);
        let s: Vec<i128> = (0..=6).map(|d| {
            let v = z.s(d).eval(&int(q as i64));
            v.to_integer().try_into().unwrap()
        }).collect();
        // Newton: m s_m + sum_{i=1}^{m} N_i s_{m-i} = 0 for the inverse zeta function.
        for m in 1..=6usize {
            let mut acc = m as i128 * s[m];
            for i in 1..=m {
                acc += desc.point_count(q, i as u32) * s[m - i];
            }
            prop_assert_eq!(acc, 0);
        }
    }
}
