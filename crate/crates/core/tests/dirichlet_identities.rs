use std::collections::BTreeMap;

use asdist_core::counting::{conductor_count, subgroup_count_poly, DivisorModule, Place};
use asdist_core::dirichlet::{
    euler_factor_closed_form_check, lambda_rational, phi_i_series, phi_series, psi_series, upsilon_series,
};
use asdist_core::{FieldModel, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn elliptic(l: [i64; 3], clp: u32) -> FieldModel {
    FieldModel::new(2, 2, 1, l.iter().map(|&c| BigInt::from(c)).collect(), BigUint::from(clp)).unwrap()
}

#[test]
fn phi_r_factors_as_lambda_times_psi() {
    for (p, r, q) in [(2u64, 1u32, 2u64), (2, 2, 2), (3, 1, 3), (3, 2, 3), (5, 1, 5)] {
        let model = FieldModel::rational(p, q).unwrap();
        let group = subgroup_count_poly(p, r).unwrap();
        let order = 12;
        let phi = phi_i_series(&model, &group, r, order).unwrap();
        let lambda = lambda_rational(&model, p, r).unwrap().to_series(order);
        let psi = psi_series(&model, p, r, order).unwrap();
        assert_eq!(psi.mul(&lambda), phi, "p={p} r={r} q={q}");
    }
}

#[test]
fn factorization_on_elliptic_models() {
    for (l, clp) in [([1, 0, 2], 1), ([1, -1, 2], 2)] {
        let model = elliptic(l, clp);
        let group = subgroup_count_poly(2, 2).unwrap();
        for r in 1..=2 {
            let phi = phi_i_series(&model, &group, r, 12).unwrap();
            let lambda = lambda_rational(&model, 2, r).unwrap().to_series(12);
            assert_eq!(psi_series(&model, 2, r, 12).unwrap().mul(&lambda), phi);
        }
    }
}

#[test]
fn p2_closed_form() {
    // Phi_r = Z(q^r t^2) / Z(t^2)
    for q in [2u64, 4, 8] {
        let model = FieldModel::rational(2, q).unwrap();
        for r in 1..=3u32 {
            let group = subgroup_count_poly(2, r).unwrap();
            let order = 14;
            let z = model.zeta_series(order);
            let qr = BigRational::from_integer(num_traits::pow(BigInt::from(q), r as usize));
            let expected = z.subst_monomial(&qr, 2).mul(&z.subst_monomial(&BigRational::one(), 2).inv().unwrap());
            assert_eq!(phi_i_series(&model, &group, r, order).unwrap(), expected);
        }
    }
}

#[test]
fn euler_factor_closed_form_small_grid() {
    for d in 1..=3u64 {
        for p in [2u64, 3, 5] {
            for r in 1..=3u32 {
                let order = (d * (2 * p + 1)) as usize;
                assert!(euler_factor_closed_form_check(p, d, p, r, order), "d={d} p={p} r={r}");
            }
        }
    }
}

#[test]
fn series_matches_sum_over_modules() {
    // enumerate modules over abstract places of each degree and add up conductor counts
    let models = [
        (FieldModel::rational(2, 2).unwrap(), 1u32),
        (FieldModel::rational(2, 2).unwrap(), 2),
        (FieldModel::rational(3, 3).unwrap(), 1),
        (elliptic([1, 0, 2], 1), 1),
        (elliptic([1, -1, 2], 2), 1),
        (elliptic([1, -1, 2], 2), 2),
    ];
    let max_degree = 6usize;
    for (model, r) in models {
        let group = subgroup_count_poly(model.p(), r).unwrap();
        let series = phi_series(&model, &group, max_degree).unwrap();
        let counts = model.prime_degree_counts(max_degree).unwrap();
        let mut places = Vec::new();
        for (i, b) in counts.iter().enumerate() {
            for index in 0..b.to_u64().unwrap() {
                places.push(Place::Abstract { degree: i as u32 + 1, index });
            }
        }
        // modules as (module, degree), extended place by place
        let mut modules: Vec<(DivisorModule, usize)> = vec![(DivisorModule::trivial(), 0)];
        for place in &places {
            let d = place.degree() as usize;
            let mut next = Vec::new();
            for (m, deg) in &modules {
                next.push((m.clone(), *deg));
                let mut k = 1;
                while deg + k * d <= max_degree {
                    let mut e = m.clone();
                    e.raise(place.clone(), k as u32);
                    next.push((e, deg + k * d));
                    k += 1;
                }
            }
            modules = next;
        }
        let mut totals: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (m, deg) in &modules {
            *totals.entry(*deg).or_insert_with(BigUint::zero) += conductor_count(&model, &group, m).unwrap();
        }
        for n in 0..=max_degree {
            let want = BigRational::from_integer(BigInt::from(totals.get(&n).cloned().unwrap_or_default()));
            assert_eq!(series.coeff(n), want, "degree {n}, r={r}, l={:?}", model.l_poly());
        }
    }
}

#[test]
fn genus_one_upsilon_and_constant_terms() {
    let order = 12;
    let g1 = subgroup_count_poly(2, 1).unwrap();
    let a = elliptic([1, 0, 2], 1);
    assert_eq!(upsilon_series(&a, &g1, order).unwrap(), TruncatedSeries::constant(-BigRational::one(), order));
    let b = elliptic([1, -1, 2], 2);
    let inv_zeta2 = b.zeta_series(order).inv().unwrap().subst_monomial(&BigRational::one(), 2);
    let two = BigRational::from_integer(BigInt::from(2));
    let expected = &TruncatedSeries::constant(-BigRational::one(), order) + &inv_zeta2.scale(&two);
    assert_eq!(upsilon_series(&b, &g1, order).unwrap(), expected);
    assert_eq!(phi_series(&a, &g1, order).unwrap().coeff(0), BigRational::one());
    assert_eq!(phi_series(&b, &g1, order).unwrap().coeff(0), BigRational::from_integer(3.into()));
}
