use mcount_core::finitefield::{elements_of_degree, mobius, prime_power, FieldElement, FieldSpec, FieldTables};
use proptest::prelude::*;

const SMALL_FIELDS: [(u32, u32); 12] =
    [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 2)];

#[test]
fn field_axioms_exhaustive() {
    for (p, k) in SMALL_FIELDS {
        let spec = FieldSpec::standard(p, k).unwrap();
        let all: Vec<FieldElement> = FieldElement::all(&spec).collect();
        assert_eq!(all.len() as u64, spec.size());
        let zero = FieldElement::zero(&spec);
        let one = FieldElement::one(&spec);
        for a in &all {
            assert_eq!(a.add(&zero).unwrap(), *a);
            assert_eq!(a.mul(&one).unwrap(), *a);
            assert_eq!(a.add(&a.neg()).unwrap(), zero);
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
                assert_eq!(a.pow(spec.size() as u128 - 1), one);
            }
        }
        if spec.size() > 27 {
            continue;
        }
        for a in &all {
            for b in &all {
                assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                if a.mul(b).unwrap().is_zero() {
                    assert!(a.is_zero() || b.is_zero());
                }
                for c in &all {
                    let lhs = a.mul(&b.add(c).unwrap()).unwrap();
                    let rhs = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn tables_agree_with_polynomial_arithmetic() {
    for (p, k) in SMALL_FIELDS {
        let t = FieldTables::get(p, k).unwrap();
        let spec = t.spec().clone();
        for a in 0..t.size() {
            let ea = t.to_element(a);
            assert_eq!(t.from_element(&ea).unwrap(), a);
            for b in (0..t.size()).step_by(1 + t.size() as usize / 13) {
                let eb = t.to_element(b);
                assert_eq!(t.to_element(t.add(a, b)), ea.add(&eb).unwrap());
                assert_eq!(t.to_element(t.mul(a, b)), ea.mul(&eb).unwrap());
                assert_eq!(t.to_element(t.sub(a, b)), ea.sub(&eb).unwrap());
            }
            if a != 0 {
                assert_eq!(t.exp(t.log(a) as u64), a);
            }
        }
        assert_eq!(FieldElement::generator(&spec).pow(spec.size() as u128 - 1), FieldElement::one(&spec));
    }
}

#[test]
fn frobenius_is_an_automorphism() {
    for (p, k) in SMALL_FIELDS {
        let spec = FieldSpec::standard(p, k).unwrap();
        let all: Vec<FieldElement> = FieldElement::all(&spec).collect();
        let mut images: Vec<u64> = all.iter().map(|a| a.frobenius(1).code()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), all.len());
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(5) {
                let s = a.add(b).unwrap().frobenius(1);
                assert_eq!(s, a.frobenius(1).add(&b.frobenius(1)).unwrap());
                let m = a.mul(b).unwrap().frobenius(1);
                assert_eq!(m, a.frobenius(1).mul(&b.frobenius(1)).unwrap());
            }
            assert_eq!(a.frobenius(k), *a);
        }
    }
}

#[test]
fn element_degrees_match_necklace_counts() {
    for (p, k) in SMALL_FIELDS {
        let spec = FieldSpec::standard(p, k).unwrap();
        for d in (1..=k).filter(|d| k % d == 0) {
            let n = FieldElement::all(&spec).filter(|a| a.element_degree() == d).count() as i64;
            assert_eq!(n, elements_of_degree(p as u64, d), "F_{p}^{k}, degree {d}");
        }
    }
}

#[test]
fn frobenius_orbits_of_f8() {
    let spec = FieldSpec::standard(2, 3).unwrap();
    let mut sizes: Vec<u32> = FieldElement::all(&spec).map(|a| a.element_degree()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 3, 3, 3, 3, 3, 3]);
}

#[test]
fn explicit_modulus_for_f9() {
    let spec = FieldSpec::with_modulus(3, vec![1, 0, 1]).unwrap();
    let i = FieldElement::new(&spec, &[0, 1]).unwrap();
    assert_eq!(i.mul(&i).unwrap(), FieldElement::from_int(&spec, -1));
    assert_eq!(i.pow(4), FieldElement::one(&spec));
    let one_plus_i = FieldElement::new(&spec, &[1, 1]).unwrap();
    let inv = one_plus_i.inv().unwrap();
    assert_eq!(inv, FieldElement::new(&spec, &[2, 1]).unwrap());
    assert_eq!(i.minimal_polynomial(), vec![1, 0, 1]);
    assert!(FieldSpec::with_modulus(3, vec![2, 0, 1]).is_err());
}

#[test]
fn mixing_fields_is_an_error() {
    let a = FieldElement::one(&FieldSpec::standard(3, 2).unwrap());
    let b = FieldElement::one(&FieldSpec::with_modulus(3, vec![1, 0, 1]).unwrap());
    assert!(a.add(&b).is_err());
    assert!(FieldElement::zero(&FieldSpec::standard(5, 1).unwrap()).inv().is_err());
}

#[test]
fn embeddings_commute_with_frobenius_and_arithmetic() {
    for (p, m, n) in [(2, 1, 4), (2, 2, 4), (3, 1, 3), (2, 1, 3), (3, 1, 2), (5, 1, 2)] {
        let src = FieldSpec::standard(p, m).unwrap();
        let dst = FieldSpec::standard(p, n).unwrap();
        let all: Vec<FieldElement> = FieldElement::all(&src).collect();
        for a in &all {
            let ea = a.embed(&dst).unwrap();
            assert_eq!(a.frobenius(1).embed(&dst).unwrap(), ea.frobenius(1));
            assert_eq!(ea.element_degree(), a.element_degree());
            for b in &all {
                assert_eq!(a.mul(b).unwrap().embed(&dst).unwrap(), ea.mul(&b.embed(&dst).unwrap()).unwrap());
                assert_eq!(a.add(b).unwrap().embed(&dst).unwrap(), ea.add(&b.embed(&dst).unwrap()).unwrap());
            }
        }
        let t_src = FieldTables::get(p, m).unwrap();
        let t_dst = FieldTables::get(p, n).unwrap();
        let sub = t_dst.subfield(m);
        assert_eq!(sub.len() as u32, t_src.size());
        for c in 0..t_src.size() {
            assert!(t_dst.in_subfield(t_dst.embed_code_from(&t_src, c), m));
        }
    }
    assert!(FieldElement::one(&FieldSpec::standard(2, 2).unwrap()).embed(&FieldSpec::standard(2, 3).unwrap()).is_err());
}

#[test]
fn embedding_chain_is_transitive() {
    let f4 = FieldSpec::standard(2, 2).unwrap();
    let f16 = FieldSpec::standard(2, 4).unwrap();
    for a in FieldElement::all(&f4) {
        let direct = a.embed(&f16).unwrap();
        assert_eq!(direct.element_degree(), a.element_degree());
        assert_eq!(direct.minimal_polynomial(), a.minimal_polynomial());
    }
}

#[test]
fn quadratic_character_counts() {
    for (p, k) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)] {
        let t = FieldTables::get(p, k).unwrap();
        let chi: Vec<i32> = (0..t.size()).map(|a| t.quadratic_character(a)).collect();
        assert_eq!(chi.iter().filter(|&&c| c == 1).count() as u32, (t.size() - 1) / 2);
        assert_eq!(chi.iter().sum::<i32>(), 0);
        for a in 1..t.size() {
            assert_eq!(t.quadratic_character(t.mul(a, a)), 1);
        }
    }
}

#[test]
fn number_theory_helpers() {
    assert_eq!(prime_power(9).unwrap(), (3, 2));
    assert_eq!(prime_power(2).unwrap(), (2, 1));
    assert!(prime_power(6).is_err());
    assert!(prime_power(1).is_err());
    assert_eq!((1..=10).map(mobius).collect::<Vec<_>>(), vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    assert_eq!(elements_of_degree(2, 3), 6);
    assert_eq!(elements_of_degree(3, 2), 6);
    assert_eq!(elements_of_degree(2, 4), 12);
}

#[test]
fn standard_fields_are_deterministic() {
    let a = FieldSpec::standard(2, 4).unwrap();
    let b = FieldSpec::standard(2, 4).unwrap();
    assert_eq!(a.modulus(), b.modulus());
    assert!(a.is_standard());
    assert_eq!(a.modulus().len(), 5);
    assert_eq!(*a.modulus().last().unwrap(), 1);
}

proptest! {
    #[test]
    fn code_round_trip(k in 1u32..=3, code in 0u64..125) {
        let spec = FieldSpec::standard(5, k).unwrap();
        let c = code % spec.size();
        prop_assert_eq!(FieldElement::from_code(&spec, c).code(), c);
    }

    #[test]
    fn division_inverts_multiplication(a in 0u32..81, b in 1u32..81) {
        let t = FieldTables::get(3, 4).unwrap();
        prop_assert_eq!(t.div(t.mul(a, b), b), a);
        prop_assert_eq!(t.pow(b, 80), 1);
    }

    #[test]
    fn frobenius_power_is_pth_power(a in 0u32..64) {
        let t = FieldTables::get(2, 6).unwrap();
        prop_assert_eq!(t.frob(a, 1), t.mul(a, a));
        prop_assert_eq!(t.frob(a, 6), a);
    }
}
