use asdist_core::counting::{
    conductor_count, multiplicative_count, subgroup_count_poly, unit_group_order, DivisorModule, Place,
};
use asdist_core::dirichlet::{phi_series, RationalFunctionT};
use asdist_core::tauberian::{predict_coefficients, principal_parts};
use asdist_core::{FieldModel, QPoly, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const ORDER: usize = 8;

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-20i64..20, 1i64..6), ORDER).prop_map(|v| {
        let coeffs = v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        TruncatedSeries::from_coeffs(coeffs, ORDER)
    })
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), 1i64..9).prop_map(|(s, c)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs.resize(ORDER, BigRational::zero());
        coeffs[0] = BigRational::from_integer(c.into());
        TruncatedSeries::from_coeffs(coeffs, ORDER)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.mul(&inv), TruncatedSeries::one(ORDER));
        prop_assert_eq!(inv.mul(&a), TruncatedSeries::one(ORDER));
    }

    #[test]
    fn substitution_is_multiplicative(a in series(), b in series(), scale in -3i64..4, power in 1usize..4) {
        let c = BigRational::from_integer(scale.into());
        let lhs = a.mul(&b).subst_monomial(&c, power);
        let rhs = a.subst_monomial(&c, power).mul(&b.subst_monomial(&c, power));
        prop_assert_eq!(lhs, rhs);
    }
}

fn genus_le_one_models() -> Vec<FieldModel> {
    let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    vec![
        FieldModel::rational(2, 2).unwrap(),
        FieldModel::rational(3, 3).unwrap(),
        FieldModel::rational(2, 4).unwrap(),
        FieldModel::rational(5, 5).unwrap(),
        FieldModel::new(2, 2, 1, ints(&[1, 0, 2]), BigUint::one()).unwrap(),
        FieldModel::new(2, 2, 1, ints(&[1, -1, 2]), BigUint::from(2u32)).unwrap(),
    ]
}

fn module() -> impl Strategy<Value = DivisorModule> {
    prop::collection::vec((1u32..4, 0u64..3, 1u32..7), 0..4).prop_map(|entries| {
        DivisorModule::from_entries(
            entries.into_iter().map(|(degree, index, mult)| (Place::Abstract { degree, index }, mult)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_form_equals_moebius_sum(
        m in module(),
        pick in 0usize..4,
        r in 1u32..4,
    ) {
        let model = &genus_le_one_models()[pick];
        let group = subgroup_count_poly(model.p(), r).unwrap();
        let mut total = BigRational::zero();
        for i in 1..=r {
            let mut inner = BigInt::zero();
            for n in m.divisors() {
                let mu = m.quotient(&n).moebius();
                inner += BigInt::from(mu) * num_traits::pow(unit_group_order(model, &n), i as usize);
            }
            total += group.e(i) * BigRational::from_integer(inner);
        }
        prop_assert_eq!(multiplicative_count(model, &group, &m), total);
    }

    #[test]
    fn counts_are_nonnegative_integers(m in module(), pick in 0usize..6, r in 1u32..4) {
        let model = &genus_le_one_models()[pick];
        let group = subgroup_count_poly(model.p(), r).unwrap();
        conductor_count(model, &group, &m).unwrap();
    }

    #[test]
    fn divisor_sums_count_ray_quotients(m in module(), pick in 0usize..4, r in 1u32..4) {
        // genus 0: the ray class quotient mod m has order p |U_m|
        let model = &genus_le_one_models()[pick];
        let group = subgroup_count_poly(model.p(), r).unwrap();
        let sum: BigUint = m.divisors().iter().map(|n| conductor_count(model, &group, n).unwrap()).sum();
        let expected = group.eval(&BigRational::from_integer(unit_group_order(model, &m)));
        prop_assert_eq!(BigRational::from_integer(BigInt::from(sum)), expected);
    }
}

#[test]
fn series_coefficients_are_counts_with_no_linear_term() {
    for model in genus_le_one_models() {
        for r in 1..=2u32 {
            let group = subgroup_count_poly(model.p(), r).unwrap();
            let phi = phi_series(&model, &group, 10).unwrap();
            assert!(phi.is_integral());
            assert!(phi.coeffs().iter().all(|c| !c.is_negative()));
            assert!(phi.coeff(1).is_zero());
        }
    }
}

#[test]
fn even_series_predictions_vanish_off_progression() {
    // (1 - t^2) / (1 - 4 t^2)
    let f = RationalFunctionT::new(&QPoly::from_integers([1, 0, -1]), &QPoly::from_integers([1, 0, -4])).unwrap();
    let model = principal_parts(&f, None, None, 128).unwrap();
    assert_eq!(model.root_count(), 2);
    for n in [11u64, 21, 31] {
        let odd = predict_coefficients(&model, n).unwrap().abs().to_f64();
        let even = predict_coefficients(&model, n + 1).unwrap().to_f64();
        assert!(odd < 1e-25 * even, "n={n}: {odd}");
    }
}

#[test]
fn conjugate_poles_give_real_predictions() {
    // 1 / (1 - t + t^2) has poles at the primitive sixth roots of unity
    let f = RationalFunctionT::new(&QPoly::from_integers([1]), &QPoly::from_integers([1, -1, 1])).unwrap();
    let model = principal_parts(&f, None, None, 128).unwrap();
    assert_eq!(model.root_count(), 6);
    // coefficients cycle 1, 1, 0, -1, -1, 0
    let expected = [1.0, 1.0, 0.0, -1.0, -1.0, 0.0];
    for n in 1..=12u64 {
        let got = predict_coefficients(&model, n).unwrap().to_f64();
        assert!((got - expected[(n % 6) as usize]).abs() < 1e-20, "n={n}: {got}");
    }
}
