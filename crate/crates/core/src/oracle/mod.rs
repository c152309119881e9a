//! Brute-force census of `C_p^r`-extensions of `F_q(x)` by conductor degree.
//!
//! Extensions correspond to `r`-dimensional `F_p`-subspaces of `K / ℘(K)`,
//! and the conductor of a subspace is the place-wise maximum over any basis.
//! Counts are independent of the analytic machinery and serve as its check.

pub mod classes;
pub mod gf;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::counting::DivisorModule;
use crate::error::{Error, Result};
pub use classes::{normalize, rep_conductor, to_fraction, ASRep, ClassLayout, Profile};
pub use gf::{irreducibles_up_to, GFElement, GFPoly, GaloisField};

/// Default limit on the number of classes or subspaces visited.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn layout_for(q: u64, p: u64, bound: usize) -> Result<ClassLayout> {
    let field = GaloisField::new(q)?;
    if field.p() as u64 != p {
        return Err(Error::InvalidInput(format!("p = {p} is not the characteristic of F_{q}")));
    }
    let irreducibles = irreducibles_up_to(&field, bound / 2);
    Ok(ClassLayout::new(field, &irreducibles, bound as u64))
}

/// Every nonzero class with conductor degree at most `bound`, once each, with its conductor.
pub fn enumerate_classes(q: u64, bound: usize, budget: u64) -> Result<Vec<(ASRep, DivisorModule)>> {
    let field = GaloisField::new(q)?;
    let irreducibles = irreducibles_up_to(&field, bound / 2);
    let layout = ClassLayout::new(field, &irreducibles, bound as u64);
    let mut out = Vec::new();
    layout.for_each_class(budget, |v, profile| {
        out.push((layout.to_rep(v), layout.profile_conductor(profile)));
    })?;
    Ok(out)
}

/// Nonzero classes with conductor of degree at most `bound`, grouped by conductor.
pub fn class_census(q: u64, bound: usize, budget: u64) -> Result<BTreeMap<DivisorModule, u64>> {
    let field = GaloisField::new(q)?;
    let irreducibles = irreducibles_up_to(&field, bound / 2);
    let layout = ClassLayout::new(field, &irreducibles, bound as u64);
    let mut census = BTreeMap::new();
    layout.for_each_class(budget, |_, profile| {
        *census.entry(layout.profile_conductor(profile)).or_insert(0) += 1;
    })?;
    Ok(census)
}

/// `c_n` for `n = 0..=bound`: the number of `C_p^r`-extensions of `F_q(x)`
/// (inside a fixed separable closure) whose conductor has degree `n`.
pub fn oracle_count(q: u64, p: u64, r: u32, bound: usize, budget: u64) -> Result<Vec<BigUint>> {
    if r == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let layout = layout_for(q, p, bound)?;
    let mut counts = vec![0u64; bound + 1];
    if r == 1 {
        // lines: count vectors whose first nonzero coordinate is 1
        layout.for_each_class(budget, |v, profile| {
            if v.iter().find(|&&c| c != 0) == Some(&1) {
                counts[layout.profile_degree(profile) as usize] += 1;
            }
        })?;
        return Ok(counts.into_iter().map(BigUint::from).collect());
    }

    // projective representatives, each with its pivot and profile
    let mut points: Vec<(usize, Vec<u8>, Profile)> = Vec::new();
    layout.for_each_class(budget, |v, profile| {
        let pivot = v.iter().position(|&c| c != 0).unwrap();
        if v[pivot] == 1 {
            points.push((pivot, v.to_vec(), profile.clone()));
        }
    })?;
    points.sort_by_key(|(pivot, _, _)| *pivot);

    // each subspace is visited once, through its reduced row echelon basis
    struct Search<'a> {
        layout: &'a ClassLayout,
        points: &'a [(usize, Vec<u8>, Profile)],
        rank: usize,
        counts: Vec<u64>,
        visited: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, chosen: &mut Vec<usize>, profile: &Profile) -> Result<()> {
            if chosen.len() == self.rank {
                self.counts[self.layout.profile_degree(profile) as usize] += 1;
                return Ok(());
            }
            for idx in start..self.points.len() {
                let (pivot, v, prof) = &self.points[idx];
                if chosen.last().is_some_and(|&c| self.points[c].0 >= *pivot) {
                    continue;
                }
                // zero at earlier pivots, earlier rows zero at this pivot
                if chosen.iter().any(|&c| v[self.points[c].0] != 0 || self.points[c].1[*pivot] != 0) {
                    continue;
                }
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::BudgetExceeded { budget: self.budget });
                }
                let merged: Profile = profile.iter().zip(prof).map(|(a, b)| *a.max(b)).collect();
                if self.layout.profile_degree(&merged) > self.layout.bound() {
                    continue;
                }
                chosen.push(idx);
                self.go(idx + 1, chosen, &merged)?;
                chosen.pop();
            }
            Ok(())
        }
    }
    let mut search = Search { layout: &layout, points: &points, rank: r as usize, counts, visited: 0, budget };
    let empty = vec![0u64; points.first().map_or(0, |pt| pt.2.len())];
    search.go(0, &mut Vec::new(), &empty)?;
    Ok(search.counts.into_iter().map(BigUint::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{conductor_count, subgroup_count_poly, unit_group_order};
    use crate::dirichlet::phi_series;
    use crate::FieldModel;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn check_against_series(q: u64, p: u64, r: u32, bound: usize) {
        let model = FieldModel::rational(p, q).unwrap();
        let group = subgroup_count_poly(p, r).unwrap();
        let series = phi_series(&model, &group, bound).unwrap();
        let counts = oracle_count(q, p, r, bound, DEFAULT_BUDGET).unwrap();
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(BigRational::from_integer(BigInt::from(c.clone())), series.coeff(n), "q={q} r={r} n={n}");
        }
    }

    #[test]
    fn rank_one_matches_series() {
        check_against_series(2, 2, 1, 8);
        check_against_series(3, 3, 1, 5);
        check_against_series(4, 2, 1, 5);
    }

    #[test]
    fn rank_two_matches_series() {
        check_against_series(2, 2, 2, 6);
    }

    #[test]
    fn census_matches_conductor_counts_and_unit_groups() {
        for (q, p, bound) in [(2u64, 2u64, 5usize), (3, 3, 4)] {
            let model = FieldModel::rational(p, q).unwrap();
            let group = subgroup_count_poly(p, 1).unwrap();
            let census = class_census(q, bound, DEFAULT_BUDGET).unwrap();
            for (m, &count) in &census {
                assert_eq!(count % (p - 1), 0);
                assert_eq!(BigUint::from(count / (p - 1)), conductor_count(&model, &group, m).unwrap(), "{m}");
            }
            // classes with conductor dividing m, zero included, number p |U_m|
            for m in census.keys() {
                let total: u64 = m.divisors().iter().map(|n| census.get(n).copied().unwrap_or(0)).sum::<u64>() + 1;
                let unit = unit_group_order(&model, m);
                assert_eq!(BigInt::from(total), BigInt::from(p) * unit, "{m}");
            }
        }
    }
}
