//! Counting `C_p^r`-extensions with a prescribed conductor.
//!
//! The number `c_m` of extensions with conductor `m` is almost multiplicative
//! in `m`; the defect comes from Selmer ray groups, which vanish once `m`
//! carries enough square mass. For genus 0 and 1 the exceptional set is just
//! the trivial module and every `c_m` is computable in closed form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldModel};

/// Upper limit on the size of an enumerated exceptional set.
const EXCEPTIONAL_BUDGET: usize = 1_000_000;

/// A prime (place) of the function field.
///
/// Analytic code only needs degrees, so primes are usually the abstract
/// `(degree, index)` pairs. The brute-force oracle over `F_q(x)` uses
/// concrete monic irreducibles and the infinite place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Abstract {
        degree: u32,
        index: u64,
    },
    /// Monic irreducible polynomial, ascending coefficients encoded as `F_q` element indices.
    Finite(Vec<u32>),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Abstract { degree, .. } => *degree,
            Place::Finite(coeffs) => (coeffs.len() - 1) as u32,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Abstract { degree, index } => write!(f, "P{degree}.{index}"),
            Place::Infinity => write!(f, "inf"),
            Place::Finite(coeffs) => {
                write!(f, "(")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An effective divisor, used as a module or conductor.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorModule {
    entries: BTreeMap<Place, u32>,
}

impl DivisorModule {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds a module, dropping zero multiplicities.
    pub fn from_entries<I: IntoIterator<Item = (Place, u32)>>(entries: I) -> Self {
        let mut m = Self::default();
        for (place, mult) in entries {
            m.raise(place, mult);
        }
        m
    }

    /// Multiplies by `place^mult`.
    pub fn raise(&mut self, place: Place, mult: u32) {
        if mult > 0 {
            *self.entries.entry(place).or_insert(0) += mult;
        }
    }

    pub fn entries(&self) -> &BTreeMap<Place, u32> {
        &self.entries
    }

    pub fn multiplicity(&self, place: &Place) -> u32 {
        self.entries.get(place).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|(place, mult)| place.degree() as u64 * *mult as u64).sum()
    }

    /// Every prime divisor occurs with multiplicity at least two.
    pub fn is_squareful(&self) -> bool {
        self.entries.values().all(|&m| m >= 2)
    }

    /// Moebius function: zero on modules divisible by a square.
    pub fn moebius(&self) -> i32 {
        if self.entries.values().any(|&m| m >= 2) {
            0
        } else if self.entries.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All divisors `n | m`.
    pub fn divisors(&self) -> Vec<DivisorModule> {
        let mut out = vec![DivisorModule::trivial()];
        for (place, &mult) in &self.entries {
            let mut next = Vec::with_capacity(out.len() * (mult as usize + 1));
            for d in &out {
                for k in 0..=mult {
                    let mut e = d.clone();
                    e.raise(place.clone(), k);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// `m / n`, assuming `n | m`.
    pub fn quotient(&self, n: &DivisorModule) -> DivisorModule {
        DivisorModule::from_entries(
            self.entries.iter().map(|(place, &mult)| (place.clone(), mult - n.multiplicity(place))),
        )
    }
}

impl fmt::Display for DivisorModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        for (i, (place, mult)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{place}^{mult}")?;
        }
        Ok(())
    }
}

/// The target group `C_p^r` and its subgroup-counting polynomial
/// `e(X) = prod_{i<r} (pX - p^i)/(p^r - p^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    p: u64,
    r: u32,
    e_coeffs: Vec<BigRational>,
    group_order: BigUint,
    aut_order: BigUint,
}

impl GroupSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `e_0..=e_r`.
    pub fn e_coeffs(&self) -> &[BigRational] {
        &self.e_coeffs
    }

    pub fn e(&self, i: u32) -> &BigRational {
        &self.e_coeffs[i as usize]
    }

    pub fn group_order(&self) -> &BigUint {
        &self.group_order
    }

    pub fn aut_order(&self) -> &BigUint {
        &self.aut_order
    }

    /// Evaluates `e(x)`.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.e_coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Expands the subgroup-counting polynomial for `C_p^r`.
pub fn subgroup_count_poly(p: u64, r: u32) -> Result<GroupSpec> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(Error::InvalidInput("group rank must be positive".into()));
    }
    let pb = BigInt::from(p);
    let pr = num_traits::pow(pb.clone(), r as usize);
    let mut coeffs = vec![BigRational::one()];
    let mut aut = BigInt::one();
    for i in 0..r {
        let pi = num_traits::pow(pb.clone(), i as usize);
        let den = &pr - &pi;
        aut *= &den;
        // multiply by (p X - p^i) / den
        let lin0 = BigRational::new(-pi, den.clone());
        let lin1 = BigRational::new(pb.clone(), den);
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c * &lin0;
            next[k + 1] += c * &lin1;
        }
        coeffs = next;
    }
    Ok(GroupSpec {
        p,
        r,
        e_coeffs: coeffs,
        group_order: pr.to_biguint().unwrap(),
        aut_order: aut.to_biguint().unwrap(),
    })
}

/// `r_m = m - 1 - floor((m-1)/p)` with `r_0 = 0`: the `F_p`-rank of the
/// local unit quotient `U_{P^m}` per unit of residue degree.
pub fn wild_exponent(m: u64, p: u64) -> u64 {
    if m == 0 {
        0
    } else {
        m - 1 - (m - 1) / p
    }
}

/// Sufficient criterion for a trivial Selmer ray group:
/// `sum_{P^m || m} (m - 1) deg P > 2g - 2`.
///
/// `false` means the criterion does not apply, not that `S_m` is nontrivial.
pub fn selmer_trivial(model: &FieldModel, m: &DivisorModule) -> bool {
    let mass: i64 = m.entries().iter().map(|(place, &mult)| (mult as i64 - 1) * place.degree() as i64).sum();
    mass > model.degree_bound_for_exceptional()
}

/// Membership in the exceptional set `M`: the trivial module, or a squareful
/// module supported on primes of degree at most `2g - 2` with multiplicities
/// at most `2g`.
pub fn is_exceptional(model: &FieldModel, m: &DivisorModule) -> bool {
    if m.is_trivial() {
        return true;
    }
    let bound = model.degree_bound_for_exceptional();
    let max_mult = 2 * model.genus();
    m.entries().iter().all(|(place, &mult)| mult >= 2 && mult <= max_mult && (place.degree() as i64) <= bound)
}

/// Enumerates the exceptional set `M` over abstract primes.
pub fn exceptional_modules(model: &FieldModel, _group: &GroupSpec) -> Result<Vec<DivisorModule>> {
    let mut out = vec![DivisorModule::trivial()];
    if model.genus() <= 1 {
        return Ok(out);
    }
    let max_degree = model.degree_bound_for_exceptional() as usize;
    let max_mult = 2 * model.genus();
    let counts = model.prime_degree_counts(max_degree)?;
    let mut places = Vec::new();
    for (i, b) in counts.iter().enumerate() {
        let b = b
            .to_u64()
            .filter(|&b| b as usize <= EXCEPTIONAL_BUDGET)
            .ok_or_else(|| Error::Unsupported("too many small-degree primes".into()))?;
        for index in 0..b {
            places.push(Place::Abstract { degree: i as u32 + 1, index });
        }
    }
    for place in places {
        let mut next = Vec::with_capacity(out.len() * max_mult as usize);
        for m in &out {
            next.push(m.clone());
            for mult in 2..=max_mult {
                let mut e = m.clone();
                e.raise(place.clone(), mult);
                next.push(e);
            }
            if next.len() > EXCEPTIONAL_BUDGET {
                return Err(Error::Unsupported(format!("exceptional set exceeds {EXCEPTIONAL_BUDGET} modules")));
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// `N^{i r_m} - N^{i r_{m-1}}`
pub(crate) fn local_difference(norm: &BigInt, i: u32, m: u64, p: u64) -> BigInt {
    let hi = num_traits::pow(norm.clone(), (i as u64 * wild_exponent(m, p)) as usize);
    let lo = num_traits::pow(norm.clone(), (i as u64 * wild_exponent(m - 1, p)) as usize);
    hi - lo
}

/// `|U_m| = prod_{P^m || m} N(P)^{r_m}`.
pub fn unit_group_order(model: &FieldModel, m: &DivisorModule) -> BigInt {
    m.entries()
        .iter()
        .map(|(place, &mult)| {
            num_traits::pow(model.norm(place.degree() as u64), wild_exponent(mult as u64, model.p()) as usize)
        })
        .product()
}

/// The multiplicative part `sum_{i=1}^r e_i prod_{P^m || m} (N^{i r_m} - N^{i r_{m-1}})`.
pub fn multiplicative_count(model: &FieldModel, group: &GroupSpec, m: &DivisorModule) -> BigRational {
    let mut total = BigRational::zero();
    for i in 1..=group.r() {
        let mut prod = BigInt::one();
        for (place, &mult) in m.entries() {
            prod *= local_difference(&model.norm(place.degree() as u64), i, mult as u64, model.p());
            if prod.is_zero() {
                break;
            }
        }
        total += group.e(i) * BigRational::from_integer(prod);
    }
    total
}

pub(crate) fn tilde_count(model: &FieldModel, group: &GroupSpec, m0: &DivisorModule) -> Result<BigRational> {
    if m0.is_trivial() {
        let c1 = group.eval(&BigRational::from_integer(BigInt::from(model.clp_order().clone())));
        let e_sum: BigRational = group.e_coeffs().iter().sum();
        return Ok(c1 - e_sum);
    }
    let c = model.exceptional_counts().get(m0).ok_or_else(|| {
        Error::Unsupported(format!(
            "conductor count for exceptional module {m0} must be supplied for genus {}",
            model.genus()
        ))
    })?;
    Ok(BigRational::from_integer(BigInt::from(c.clone())) - multiplicative_count(model, group, m0))
}

fn nonnegative_integer(value: BigRational, m: &DivisorModule) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Inconsistent(format!("conductor count for {m} evaluates to {value}")));
    }
    Ok(value.to_integer().to_biguint().unwrap())
}

/// Number `c_m` of `C_p^r`-extensions with conductor exactly `m`.
pub fn conductor_count(model: &FieldModel, group: &GroupSpec, m: &DivisorModule) -> Result<BigUint> {
    if group.p() != model.p() {
        return Err(Error::InvalidInput(format!(
            "group exponent {} differs from the characteristic {}",
            group.p(),
            model.p()
        )));
    }
    if m.is_trivial() {
        let c1 = group.eval(&BigRational::from_integer(BigInt::from(model.clp_order().clone())));
        return nonnegative_integer(c1, m);
    }
    let bound = model.degree_bound_for_exceptional();
    let (small, large): (Vec<_>, Vec<_>) = m.entries().iter().partition(|(place, _)| (place.degree() as i64) <= bound);
    let m0 = DivisorModule::from_entries(small.into_iter().map(|(pl, &k)| (pl.clone(), k)));
    let square_part = large.iter().all(|(_, &k)| k == 2);
    let value = if square_part && is_exceptional(model, &m0) {
        if large.is_empty() {
            // m itself lies in M
            let c = model.exceptional_counts().get(&m0).ok_or_else(|| {
                Error::Unsupported(format!("conductor count for exceptional module {m0} not supplied"))
            })?;
            BigRational::from_integer(BigInt::from(c.clone()))
        } else {
            let mu = if large.len() % 2 == 0 { 1 } else { -1 };
            let tilde = tilde_count(model, group, &m0)?;
            tilde * BigRational::from_integer(BigInt::from(mu)) + multiplicative_count(model, group, m)
        }
    } else {
        multiplicative_count(model, group, m)
    };
    nonnegative_integer(value, m)
}
