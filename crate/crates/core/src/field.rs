//! Global function fields described by their numerical invariants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::DivisorModule;
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::series::TruncatedSeries;

/// Degrees up to which place counts are checked for nonnegativity on construction.
const VALIDATION_DEGREE: usize = 12;

/// A function field `F` with constant field `F_q` of characteristic `p`.
///
/// Only the invariants the counting formulas consume are stored: the
/// L-polynomial (which fixes the genus, class number and all place counts),
/// the order of `Cl[p]`, and for genus at least two the user-supplied
/// conductor counts of the finitely many exceptional modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldModel {
    p: u64,
    q: u64,
    genus: u32,
    l_poly: Vec<BigInt>,
    clp_order: BigUint,
    exceptional_counts: BTreeMap<DivisorModule, BigUint>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent `k` with `q = p^k`, if any.
pub(crate) fn prime_power_exponent(p: u64, q: u64) -> Option<u32> {
    if p < 2 || q < p {
        return None;
    }
    let mut k = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some(k)
}

fn is_power_of(p: u64, n: &BigUint) -> bool {
    let p = BigUint::from(p);
    let mut n = n.clone();
    if n.is_zero() {
        return false;
    }
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n.is_one()
}

pub(crate) fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl FieldModel {
    /// Validates and builds a model.
    pub fn new(p: u64, q: u64, genus: u32, l_poly: Vec<BigInt>, clp_order: BigUint) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModel(format!("characteristic {p} is not prime")));
        }
        if prime_power_exponent(p, q).is_none() {
            return Err(Error::InvalidModel(format!("q = {q} is not a power of p = {p}")));
        }
        let mut l_poly = l_poly;
        if genus == 0 && l_poly.is_empty() {
            l_poly.push(BigInt::one());
        }
        if l_poly.first() != Some(&BigInt::one()) {
            return Err(Error::InvalidModel("L-polynomial must have constant term 1".into()));
        }
        if l_poly.len() != 2 * genus as usize + 1 {
            return Err(Error::InvalidModel(format!(
                "L-polynomial has degree {} but genus {genus} requires degree {}",
                l_poly.len() - 1,
                2 * genus
            )));
        }
        // L(t) = q^g t^{2g} L(1/(qt))  <=>  a_{2g-i} = q^{g-i} a_i
        let g = genus as i64;
        let qb = BigRational::from_integer(BigInt::from(q));
        for i in 0..=2 * g {
            let lhs = BigRational::from_integer(l_poly[(2 * g - i) as usize].clone());
            let rhs = BigRational::from_integer(l_poly[i as usize].clone()) * pow_signed(&qb, g - i);
            if lhs != rhs {
                return Err(Error::InvalidModel(format!("functional equation fails at coefficient {}", 2 * g - i)));
            }
        }
        let h: BigInt = l_poly.iter().sum();
        if !h.is_positive() {
            return Err(Error::InvalidModel(format!("class number L(1) = {h} is not positive")));
        }
        if !is_power_of(p, &clp_order) {
            return Err(Error::InvalidModel(format!("|Cl[p]| = {clp_order} is not a power of {p}")));
        }
        if genus == 0 && !clp_order.is_one() {
            return Err(Error::InvalidModel("a rational function field has trivial Cl[p]".into()));
        }
        let h = h.to_biguint().unwrap();
        if !(&h % &clp_order).is_zero() {
            return Err(Error::InvalidModel(format!("|Cl[p]| = {clp_order} does not divide the class number {h}")));
        }
        let model = Self { p, q, genus, l_poly, clp_order, exceptional_counts: BTreeMap::new() };
        model.prime_degree_counts(VALIDATION_DEGREE)?;
        Ok(model)
    }

    /// The rational function field `F_q(x)`.
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        Self::new(p, q, 0, Vec::new(), BigUint::one())
    }

    /// Attaches conductor counts `c_m` for exceptional modules (genus >= 2 only).
    pub fn with_exceptional_counts(mut self, counts: BTreeMap<DivisorModule, BigUint>) -> Self {
        self.exceptional_counts = counts;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn l_poly(&self) -> &[BigInt] {
        &self.l_poly
    }

    pub fn clp_order(&self) -> &BigUint {
        &self.clp_order
    }

    pub fn exceptional_counts(&self) -> &BTreeMap<DivisorModule, BigUint> {
        &self.exceptional_counts
    }

    /// `h = L(1)`.
    pub fn class_number(&self) -> BigInt {
        self.l_poly.iter().sum()
    }

    pub fn l_polynomial(&self) -> QPoly {
        QPoly::from_integers(self.l_poly.iter().cloned())
    }

    /// `N(p) = q^d` for a prime of degree `d`.
    pub fn norm(&self, degree: u64) -> BigInt {
        num_traits::pow(BigInt::from(self.q), degree as usize)
    }

    /// Numbers `N_1..=N_D` of degree-one places over the constant extensions `F_{q^d}`.
    pub fn point_counts(&self, max_degree: usize) -> Vec<BigInt> {
        // power sums S_d of the inverse roots of L via Newton's identities:
        // S_d = -d a_d - sum_{i=1}^{d-1} a_i S_{d-i}
        let a = |i: usize| self.l_poly.get(i).cloned().unwrap_or_else(BigInt::zero);
        let mut sums: Vec<BigInt> = Vec::with_capacity(max_degree);
        for d in 1..=max_degree {
            let mut s = -BigInt::from(d) * a(d);
            for i in 1..d {
                s -= a(i) * &sums[d - i - 1];
            }
            sums.push(s);
        }
        (1..=max_degree).map(|d| self.norm(d as u64) + 1 - &sums[d - 1]).collect()
    }

    /// Numbers `b_1..=b_D` of places of each degree.
    pub fn prime_degree_counts(&self, max_degree: usize) -> Result<Vec<BigUint>> {
        let n = self.point_counts(max_degree);
        let mut out = Vec::with_capacity(max_degree);
        for d in 1..=max_degree {
            let mut acc = BigInt::zero();
            for e in 1..=d {
                if d % e == 0 {
                    acc += moebius(e as u64) * &n[d / e - 1];
                }
            }
            let (b, rem) = acc.div_rem(&BigInt::from(d));
            if !rem.is_zero() || b.is_negative() {
                return Err(Error::Inconsistent(format!("derived number of places of degree {d} is {acc}/{d}")));
            }
            out.push(b.to_biguint().unwrap());
        }
        Ok(out)
    }

    /// `Z_F(t) = L_F(t) / ((1 - t)(1 - q t))` to order `order`.
    pub fn zeta_series(&self, order: usize) -> TruncatedSeries {
        let l = TruncatedSeries::from_integers(self.l_poly.iter().cloned(), order);
        let den =
            TruncatedSeries::from_integers([BigInt::one(), -BigInt::from(self.q + 1), BigInt::from(self.q)], order);
        l.mul(&den.inv().expect("constant term 1"))
    }

    /// `Z_F(x)` at a rational point inside the disc of convergence.
    pub fn zeta_at(&self, x: &BigRational) -> BigRational {
        let one = BigRational::one();
        let q = BigRational::from_integer(BigInt::from(self.q));
        self.l_polynomial().eval(x) / ((&one - x) * (&one - q * x))
    }

    /// Rational part of `Res_{s=1} zeta_F(s)`: the residue equals
    /// `L_F(1/q) / (1 - 1/q)` divided by `log q`.
    pub fn zeta_residue(&self) -> BigRational {
        let q_inv = BigRational::new(BigInt::one(), BigInt::from(self.q));
        self.l_polynomial().eval(&q_inv) / (BigRational::one() - q_inv)
    }

    pub(crate) fn degree_bound_for_exceptional(&self) -> i64 {
        2 * self.genus as i64 - 2
    }
}

pub(crate) fn pow_signed(base: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}
