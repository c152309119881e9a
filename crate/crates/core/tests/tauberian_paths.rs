use std::time::Instant;

use asdist_core::counting::subgroup_count_poly;
use asdist_core::dirichlet::{phi_series, pole_analysis};
use asdist_core::tauberian::{addendum_constants, empirical_ratio, tauberian_constant};
use asdist_core::{FieldModel, Real};
use num_bigint::BigInt;
use num_rational::BigRational;

const PREC: u32 = 160;

fn generic_leading(model: &FieldModel, p: u64, r: u32, cutoff: usize, m: u64) -> Real {
    let group = subgroup_count_poly(p, r).unwrap();
    tauberian_constant(model, &group, cutoff, m, PREC).unwrap().leading
}

#[test]
fn rank_one_p3_constants_agree() {
    let start = Instant::now();
    let model = FieldModel::rational(3, 3).unwrap();
    let group = subgroup_count_poly(3, 1).unwrap();
    let (closed, bound) = addendum_constants(&model, &group, 20, PREC).unwrap();
    let generic = generic_leading(&model, 3, 1, 20, 12);
    let rel = ((&closed.leading - &generic) / &closed.leading).abs().to_f64();
    assert!(rel < 1e-6, "relative gap {rel}");
    assert!(bound.to_f64() / closed.leading.to_f64() < 1e-6);
    assert_eq!(closed.log_order, pole_analysis(3, 1).log_order);
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn p2_constants_agree_for_irrational_radius() {
    // r = 2: R = 2^{-3/2}
    for r in 1..=3u32 {
        let model = FieldModel::rational(2, 2).unwrap();
        let group = subgroup_count_poly(2, r).unwrap();
        let (closed, _) = addendum_constants(&model, &group, 20, PREC).unwrap();
        let generic = generic_leading(&model, 2, r, 40, 20);
        let rel = ((&closed.leading - &generic) / &closed.leading).abs().to_f64();
        assert!(rel < 1e-6, "r={r} relative gap {rel}");
    }
}

#[test]
fn full_series_ratio_on_rank_two() {
    // C(F_2(x), C_2^2; 2^n) against the exact constant 1 along even n
    let model = FieldModel::rational(2, 2).unwrap();
    let group = subgroup_count_poly(2, 2).unwrap();
    let (closed, _) = addendum_constants(&model, &group, 20, PREC).unwrap();
    assert_eq!(closed.leading_exact, Some(BigRational::from_integer(BigInt::from(1))));
    let series = phi_series(&model, &group, 24).unwrap();
    let r20 = empirical_ratio(&series, &closed, 20).unwrap().to_f64();
    let r24 = empirical_ratio(&series, &closed, 24).unwrap().to_f64();
    assert!((r24 - 1.0).abs() < (r20 - 1.0).abs() + 1e-12);
    assert!((r24 - 1.0).abs() < 0.05, "ratio {r24}");
}
