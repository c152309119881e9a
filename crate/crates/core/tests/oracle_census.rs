use std::collections::BTreeSet;

use asdist_core::counting::{DivisorModule, Place};
use asdist_core::oracle::{
    enumerate_classes, irreducibles_up_to, normalize, rep_conductor, to_fraction, ASRep, GFPoly, GaloisField,
    DEFAULT_BUDGET,
};
use asdist_core::FieldModel;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn poly(c: &[u32]) -> GFPoly {
    GFPoly::new(c.to_vec())
}

#[test]
fn irreducible_lists() {
    let f2 = GaloisField::new(2).unwrap();
    let two: BTreeSet<_> = irreducibles_up_to(&f2, 2).into_iter().collect();
    assert_eq!(two, [poly(&[0, 1]), poly(&[1, 1]), poly(&[1, 1, 1])].into_iter().collect());
    let three: BTreeSet<_> = irreducibles_up_to(&f2, 3).into_iter().collect();
    assert_eq!(three.len(), 5);
    assert!(three.contains(&poly(&[1, 1, 0, 1])) && three.contains(&poly(&[1, 0, 1, 1])));
    let f3 = GaloisField::new(3).unwrap();
    assert_eq!(irreducibles_up_to(&f3, 1), vec![poly(&[0, 1]), poly(&[1, 1]), poly(&[2, 1])]);
}

#[test]
fn irreducible_counts_match_place_counts() {
    for q in [2u64, 3, 4, 5] {
        let field = GaloisField::new(q).unwrap();
        let model = FieldModel::rational(field.p() as u64, q).unwrap();
        let counts = model.prime_degree_counts(4).unwrap();
        let irr = irreducibles_up_to(&field, 4);
        for d in 1..=4usize {
            let got = irr.iter().filter(|g| g.degree() == Some(d)).count() as u64;
            let places = counts[d - 1].to_u64().unwrap();
            assert_eq!(got + u64::from(d == 1), places, "q={q} d={d}");
        }
    }
}

#[test]
fn conductor_examples_over_f2() {
    let f = GaloisField::new(2).unwrap();
    let irr = irreducibles_up_to(&f, 3);
    let x = poly(&[0, 1]);
    let one_over_x = normalize(&f, &irr, &poly(&[1]), &x).unwrap();
    let m = rep_conductor(&one_over_x);
    assert_eq!(m, DivisorModule::from_entries([(Place::Finite(vec![0, 1]), 2)]));
    assert_eq!(m.degree(), 2);

    let constant = normalize(&f, &irr, &poly(&[1]), &poly(&[1])).unwrap();
    assert_eq!(constant.constant, 1);
    assert!(rep_conductor(&constant).is_trivial());

    let cube = normalize(&f, &irr, &poly(&[0, 0, 0, 1]), &poly(&[1])).unwrap();
    assert_eq!(rep_conductor(&cube), DivisorModule::from_entries([(Place::Infinity, 4)]));

    // x^2 = ℘(x) + x reduces to x
    let square = normalize(&f, &irr, &poly(&[0, 0, 1]), &poly(&[1])).unwrap();
    assert_eq!(rep_conductor(&square).degree(), 2);
    // 1/x^2 reduces to 1/x
    let inv_square = normalize(&f, &irr, &poly(&[1]), &poly(&[0, 0, 1])).unwrap();
    assert_eq!(inv_square, one_over_x);
}

#[test]
fn small_class_tallies() {
    assert_eq!(enumerate_classes(2, 0, DEFAULT_BUDGET).unwrap().len(), 1);
    assert_eq!(enumerate_classes(2, 2, DEFAULT_BUDGET).unwrap().len(), 7);
    assert_eq!(enumerate_classes(4, 0, DEFAULT_BUDGET).unwrap().len(), 1);
    assert!(enumerate_classes(3, 8, 1000).is_err());
}

#[test]
fn normal_form_is_idempotent() {
    for (q, bound) in [(2u64, 6usize), (3, 4), (4, 4), (5, 3), (8, 3), (9, 2)] {
        let field = GaloisField::new(q).unwrap();
        let irr = irreducibles_up_to(&field, bound);
        for (rep, conductor) in enumerate_classes(q, bound, DEFAULT_BUDGET).unwrap() {
            assert!(conductor.degree() <= bound as u64);
            assert_eq!(rep_conductor(&rep), conductor);
            let (num, den) = to_fraction(&field, &rep);
            assert_eq!(normalize(&field, &irr, &num, &den).unwrap(), rep, "q={q}");
        }
    }
}

fn digits_to_poly(mut idx: u64, q: u64, len: usize, monic: bool) -> GFPoly {
    let mut c = Vec::with_capacity(len + 1);
    for _ in 0..len {
        c.push((idx % q) as u32);
        idx /= q;
    }
    if monic {
        c.push(1);
    }
    GFPoly::new(c)
}

/// Monic polynomials of degree at most `d`, or all polynomials of degree at most `d`.
fn all_polys(q: u64, d: usize, monic: bool) -> Vec<GFPoly> {
    if monic {
        (0..=d).flat_map(|deg| (0..q.pow(deg as u32)).map(move |i| digits_to_poly(i, q, deg, true))).collect()
    } else {
        (0..q.pow(d as u32 + 1)).map(|i| digits_to_poly(i, q, d + 1, false)).collect()
    }
}

#[test]
fn exhaustive_fractions_reach_the_same_classes() {
    let field = GaloisField::new(2).unwrap();
    let irr = irreducibles_up_to(&field, 3);
    for bound in 0..=3usize {
        let listed = enumerate_classes(2, bound, DEFAULT_BUDGET).unwrap();
        let generated: BTreeSet<ASRep> = listed.iter().map(|(rep, _)| rep.clone()).collect();
        assert_eq!(generated.len(), listed.len());
        let mut reached = BTreeSet::new();
        for den in all_polys(2, 3, true) {
            for num in all_polys(2, 5, false) {
                let rep = normalize(&field, &irr, &num, &den).unwrap();
                if !rep.is_zero() && rep_conductor(&rep).degree() <= bound as u64 {
                    reached.insert(rep);
                }
            }
        }
        assert_eq!(reached, generated, "bound {bound}");
    }
}

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 9])
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_a_coboundary_keeps_the_class(
        q in fields(),
        pick in any::<prop::sample::Index>(),
        num in coeffs(3),
        den in coeffs(2),
    ) {
        let field = GaloisField::new(q).unwrap();
        let p = field.p() as u64;
        let irr = irreducibles_up_to(&field, 4);
        let classes = enumerate_classes(q, 3, DEFAULT_BUDGET).unwrap();
        let (rep, _) = &classes[pick.index(classes.len())];
        let (a, b) = to_fraction(&field, rep);
        let c = GFPoly::new(num.iter().map(|v| v % field.q()).collect());
        // monic denominator of degree two
        let mut dc: Vec<u32> = den.iter().map(|v| v % field.q()).collect();
        dc.push(1);
        let d = GFPoly::new(dc);
        // a/b + (c/d)^p - c/d
        let dp = d.pow(p, &field);
        let coboundary = c.pow(p, &field).sub(&c.mul(&d.pow(p - 1, &field), &field), &field);
        let total_num = a.mul(&dp, &field).add(&coboundary.mul(&b, &field), &field);
        let total_den = b.mul(&dp, &field);
        prop_assert_eq!(&normalize(&field, &irr, &total_num, &total_den).unwrap(), rep);
    }

    #[test]
    fn scaling_by_prime_field_units_keeps_the_conductor(
        q in fields(),
        pick in any::<prop::sample::Index>(),
        lambda in 1u32..5,
    ) {
        let field = GaloisField::new(q).unwrap();
        let lambda = lambda % field.p();
        prop_assume!(lambda != 0);
        let irr = irreducibles_up_to(&field, 3);
        let classes = enumerate_classes(q, 3, DEFAULT_BUDGET).unwrap();
        let (rep, conductor) = &classes[pick.index(classes.len())];
        let (a, b) = to_fraction(&field, rep);
        let scaled = normalize(&field, &irr, &a.scale(field.from_prime(lambda), &field), &b).unwrap();
        prop_assert_eq!(&rep_conductor(&scaled), conductor);
        prop_assert!(!scaled.is_zero());
    }
}

#[test]
fn classes_below_each_module_fill_the_unit_group() {
    use asdist_core::counting::unit_group_order;
    use asdist_core::oracle::class_census;
    use num_bigint::BigInt;

    for (q, bound) in [(2u64, 5usize), (3, 4), (4, 3)] {
        let field = GaloisField::new(q).unwrap();
        let p = field.p() as u64;
        let model = FieldModel::rational(p, q).unwrap();
        let census = class_census(q, bound, DEFAULT_BUDGET).unwrap();
        let places: Vec<Place> = std::iter::once(Place::Infinity)
            .chain(irreducibles_up_to(&field, bound).iter().map(|g| Place::Finite(g.coeffs().to_vec())))
            .collect();
        let mut modules = vec![DivisorModule::trivial()];
        for place in &places {
            let mut next = Vec::new();
            for m in &modules {
                next.push(m.clone());
                let mut k = 1;
                while m.degree() + k * place.degree() as u64 <= bound as u64 {
                    let mut e = m.clone();
                    e.raise(place.clone(), k as u32);
                    next.push(e);
                    k += 1;
                }
            }
            modules = next;
        }
        for m in &modules {
            let below: u64 = m.divisors().iter().map(|n| census.get(n).copied().unwrap_or(0)).sum();
            assert_eq!(BigInt::from(below + 1), BigInt::from(p) * unit_group_order(&model, m), "q={q} m={m}");
        }
    }
}
