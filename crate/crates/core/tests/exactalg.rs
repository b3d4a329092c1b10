use std::collections::BTreeMap;

use mcount_core::exactalg::{
    character, class_size, factorial, int, parse_rational, partitions, schur_from_class_values, ExactAlgError,
    Partition, Rational, SchurVector, TruncatedQPoly,
};
use proptest::prelude::*;

fn t(terms: &[(i32, i64)]) -> TruncatedQPoly {
    TruncatedQPoly::from_terms(terms.iter().copied())
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn poly() -> impl Strategy<Value = TruncatedQPoly> {
    prop::collection::vec(-9i64..=9, 0..6).prop_map(|c| TruncatedQPoly::from_dense(&c))
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &TruncatedQPoly::zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -5i64..=5) {
        let xr = int(x);
        prop_assert_eq!((&a * &b).eval(&xr), a.eval(&xr) * b.eval(&xr));
        prop_assert_eq!((&a + &b).eval(&xr), a.eval(&xr) + b.eval(&xr));
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        let quo = prod.div_series(&b, -40).unwrap();
        prop_assert!(quo.is_exact());
        prop_assert_eq!(quo, a);
    }

    #[test]
    fn truncated_sum_floor_is_max(a in poly(), b in poly(), fa in 0i32..5, fb in 0i32..5) {
        let s = &a.clone().truncate(fa) + &b.clone().truncate(fb);
        prop_assert_eq!(s.floor(), Some(fa.max(fb)));
        let exact = &a + &b;
        for (d, c) in s.terms() {
            prop_assert_eq!(Some(c.clone()), exact.coeff(d).or(Some(int(0))));
        }
    }

    #[test]
    fn palindrome_completion_is_palindromic(c in prop::collection::vec(0i64..50, 1..8), odd in any::<bool>()) {
        let dim = 2 * c.len() as i32 - if odd { 1 } else { 2 };
        let upper: Vec<(i32, i64)> = c.iter().enumerate().map(|(i, &x)| (dim - i as i32, x)).collect();
        let input = t(&upper).truncate(dim / 2 + 1);
        let done = input.palindrome_complete(dim).unwrap();
        prop_assert!(done.poly.is_palindromic(dim));
        prop_assert_eq!(done.hole.is_some(), dim % 2 == 0);
    }

    #[test]
    fn class_values_round_trip(vals in prop::collection::vec(-20i64..20, 3)) {
        let mut v = SchurVector::zero(3);
        for (l, x) in partitions(3).into_iter().zip(&vals) {
            v.insert(l, TruncatedQPoly::constant(*x)).unwrap();
        }
        let mut classes = BTreeMap::new();
        for s in partitions(3) {
            classes.insert(s.clone(), v.character_specialize(&s).unwrap());
        }
        prop_assert_eq!(schur_from_class_values(3, &classes).unwrap(), v);
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format!("{}/{}", r.numer(), r.denom())).unwrap(), r);
    }

    #[test]
    fn json_round_trip(a in poly(), f in prop::option::of(0i32..4)) {
        let a = match f { Some(f) => a.truncate(f), None => a };
        let s = serde_json::to_string(&a).unwrap();
        let back: TruncatedQPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn addition_examples() {
    assert_eq!(&t(&[(2, 1), (0, 1)]) + &t(&[(2, 1)]), t(&[(2, 2), (0, 1)]));
    let s = &t(&[(9, 1), (8, 4)]).truncate(8) + &t(&[(8, 1)]);
    assert_eq!(s, t(&[(9, 1), (8, 5)]).truncate(8));
}

#[test]
fn multiplication_examples() {
    assert_eq!(&t(&[(1, 1), (0, -1)]) * &t(&[(1, 1), (0, 1)]), t(&[(2, 1), (0, -1)]));
    let lhs = &(&t(&[(2, 1), (1, 1)]) * &t(&[(2, 1), (1, 1), (0, -1)])) * &TruncatedQPoly::q_pow(13);
    assert_eq!(lhs, t(&[(17, 1), (16, 2), (14, -1)]));
    let sq = &t(&[(1, 1), (0, 1)]) * &t(&[(1, 1), (0, 1)]);
    let s0 = &sq * &TruncatedQPoly::projective(14);
    assert_eq!(s0.degree(), Some(16));
    assert_eq!(s0.eval_integer(2).unwrap(), (9 * ((1i64 << 15) - 1)).into());
}

#[test]
fn truncated_multiplication_floor() {
    let a = t(&[(5, 1), (4, 1)]).truncate(4);
    let b = t(&[(2, 1), (0, 3)]);
    assert_eq!((&a * &b).floor(), Some(6));
}

#[test]
fn series_division_examples() {
    let cone = t(&[(15, 1), (14, -1), (13, -1), (12, 1)]);
    let aut = t(&[(7, 1), (6, -1), (5, -1), (4, 1)]);
    let q8 = cone.div_series(&aut, 0).unwrap();
    assert!(q8.is_exact());
    assert_eq!(q8, TruncatedQPoly::q_pow(8));
    let nsp = t(&[(15, 1), (12, -1), (11, -1)]).truncate(11);
    let out = nsp.div_series(&t(&[(6, 2), (2, -2)]), 5).unwrap();
    assert_eq!(out.coeff(9), Some(Rational::new(1.into(), 2.into())));
    assert_eq!(out.coeff(6), Some(Rational::new((-1).into(), 2.into())));
    assert_eq!(out.floor(), Some(5));
    let x = t(&[(3, 2), (0, -7)]);
    assert_eq!(x.div_series(&TruncatedQPoly::one(), 0).unwrap(), x);
    assert_eq!(x.div_series(&TruncatedQPoly::zero(), 0), Err(ExactAlgError::DivisionByZero));
    assert_eq!(x.div_series(&x.clone().truncate(1), 0), Err(ExactAlgError::InexactDivisor));
}

#[test]
fn palindrome_examples() {
    let m4 = t(&[(9, 1), (8, 4), (7, 13), (6, 32), (5, 50)]).truncate(5);
    let done = m4.palindrome_complete(9).unwrap().into_exact().unwrap();
    assert_eq!(done, t(&[(9, 1), (8, 4), (7, 13), (6, 32), (5, 50), (4, 50), (3, 32), (2, 13), (1, 4), (0, 1)]));
    assert_eq!(TruncatedQPoly::one().palindrome_complete(0).unwrap().into_exact().unwrap(), TruncatedQPoly::one());
    let m43 = t(&[(12, 1), (11, 21), (10, 207), (9, 1168), (8, 3977), (7, 8296)]).truncate(7);
    let c = m43.palindrome_complete(12).unwrap();
    assert_eq!(c.hole, Some(6));
    assert_eq!(c.clone().into_exact(), Err(ExactAlgError::UnfilledHole(6)));
    assert_eq!(c.poly.coeff(1), Some(int(21)));
    let short = t(&[(9, 1)]).truncate(8);
    assert!(matches!(short.palindrome_complete(9), Err(ExactAlgError::DualityInsufficient { .. })));
    let clash = t(&[(9, 1), (0, 2)]);
    assert!(matches!(clash.palindrome_complete(9), Err(ExactAlgError::DualityConflict { .. })));
}

#[test]
fn euler_pin_fills_hole() {
    let c = t(&[(2, 1), (0, 1)]).truncate(0).palindrome_complete(2).unwrap();
    assert_eq!(c.hole, None);
    let c = t(&[(4, 1), (3, 2)]).truncate(3).palindrome_complete(4).unwrap();
    let pinned = c.pin_at_one(&TruncatedQPoly::zero(), &int(10)).unwrap();
    assert_eq!(pinned, t(&[(4, 1), (3, 2), (2, 4), (1, 2), (0, 1)]));
}

#[test]
fn betti_substitution() {
    let m4 = t(&[(9, 1), (8, 4), (7, 13), (6, 32), (5, 50), (4, 50), (3, 32), (2, 13), (1, 4), (0, 1)]);
    let b = m4.betti_poincare().unwrap();
    assert_eq!(b.to_string(), "t^18 + 4t^16 + 13t^14 + 32t^12 + 50t^10 + 50t^8 + 32t^6 + 13t^4 + 4t^2 + 1");
    assert_eq!(TruncatedQPoly::one().betti_poincare().unwrap().to_string(), "1");
    assert!(matches!(t(&[(1, -1)]).betti_poincare(), Err(ExactAlgError::NotBettiCompatible { .. })));
}

#[test]
fn character_table_of_s3() {
    let s3 = partitions(3);
    let table: Vec<Vec<i64>> = s3.iter().map(|l| s3.iter().map(|s| character(l, s).unwrap()).collect()).collect();
    for (i, a) in s3.iter().enumerate() {
        for (j, b) in s3.iter().enumerate() {
            let inner: i64 = s3
                .iter()
                .enumerate()
                .map(|(k, s)| class_size(s) as i64 * table[i][k] * table[j][k])
                .sum();
            assert_eq!(inner, if a == b { factorial(3) as i64 } else { 0 });
        }
    }
    assert_eq!(character(&p("3"), &p("3")).unwrap(), 1);
    assert_eq!(character(&p("2,1"), &p("3")).unwrap(), -1);
    assert_eq!(character(&p("1,1,1"), &p("3")).unwrap(), 1);
}

#[test]
fn schur_specializations() {
    let open2 = SchurVector::new(
        2,
        [
            (p("2"), t(&[(11, 1), (10, 2), (9, 3), (8, -2), (7, -2), (3, -1), (2, -1)])),
            (p("1,1"), t(&[(10, 1), (9, 1), (7, -2), (3, -1), (2, -1)])),
        ],
    )
    .unwrap();
    let plain = t(&[(11, 1), (10, 3), (9, 4), (8, -2), (7, -4), (3, -2), (2, -2)]);
    assert_eq!(open2.dimension_specialize(), plain);
    assert_eq!(open2.character_specialize(&p("1,1")).unwrap(), plain);
    assert_eq!(SchurVector::zero(3).dimension_specialize(), TruncatedQPoly::zero());
    assert!(matches!(open2.character_specialize(&p("3")), Err(ExactAlgError::SizeMismatch { .. })));
}

#[test]
fn partition_text_forms() {
    assert_eq!(p("2,1").to_string(), "[2,1]");
    assert_eq!(p("[1,2]"), p("2,1"));
    assert_eq!(Partition::ones(0).key(), "");
    assert!("0,1".parse::<Partition>().is_err());
    assert_eq!(p("2,1").dimension(), 2);
}

#[test]
fn schur_json_uses_comma_keys() {
    let v = SchurVector::new(2, [(p("1,1"), TruncatedQPoly::one())]).unwrap();
    let s = serde_json::to_value(&v).unwrap();
    assert_eq!(s["n"], 2);
    assert!(s["terms"].get("1,1").is_some());
}
