//! Artin-Schreier classes of `F_q(x)` in reduced form.
//!
//! Every class in `K / ℘(K)` has a unique representative
//! `c + sum_d a_d x^d + sum_P sum_j h_j / P^j` with `p` not dividing any `d`
//! or `j`, `deg h_j < deg P`, and `c` a multiple of a fixed trace-one constant.
//! The conductor exponent at a place is one more than its top digit.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::counting::{DivisorModule, Place};
use crate::error::{Error, Result};
use crate::oracle::gf::{GFElement, GFPoly, GaloisField};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ASRep {
    /// Multiple in `F_p` of the trace-one constant.
    pub constant: u32,
    /// Polar part at infinity, `d -> a_d`.
    pub infinity: BTreeMap<u64, GFElement>,
    /// Polar parts at finite places, `P -> {j -> h_j}`.
    pub finite: BTreeMap<GFPoly, BTreeMap<u64, GFPoly>>,
}

impl ASRep {
    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.infinity.is_empty() && self.finite.is_empty()
    }
}

pub fn place_of(poly: &GFPoly) -> Place {
    Place::Finite(poly.coeffs().to_vec())
}

pub fn rep_conductor(rep: &ASRep) -> DivisorModule {
    let mut m = DivisorModule::trivial();
    if let Some(&top) = rep.infinity.keys().next_back() {
        m.raise(Place::Infinity, top as u32 + 1);
    }
    for (poly, digits) in &rep.finite {
        if let Some(&top) = digits.keys().next_back() {
            m.raise(place_of(poly), top as u32 + 1);
        }
    }
    m
}

/// Writes `rep` as a single fraction `(numerator, denominator)`.
pub fn to_fraction(field: &GaloisField, rep: &ASRep) -> (GFPoly, GFPoly) {
    let mut den = GFPoly::constant(1);
    for (poly, digits) in &rep.finite {
        let top = *digits.keys().next_back().unwrap();
        den = den.mul(&poly.pow(top, field), field);
    }
    let mut poly_part = GFPoly::constant(field.mul(field.from_prime(rep.constant), field.trace_one()));
    for (&d, &a) in &rep.infinity {
        poly_part = poly_part.add(&GFPoly::monomial(a, d as usize), field);
    }
    let mut num = poly_part.mul(&den, field);
    for (poly, digits) in &rep.finite {
        let top = *digits.keys().next_back().unwrap();
        let (cofactor, _) = den.div_rem(&poly.pow(top, field), field);
        for (&j, h) in digits {
            let term = h.mul(&poly.pow(top - j, field), field).mul(&cofactor, field);
            num = num.add(&term, field);
        }
    }
    (num, den)
}

/// Reduced representative of the class of `numerator / denominator`.
///
/// `irreducibles` must contain every prime factor of the denominator.
pub fn normalize(
    field: &GaloisField,
    irreducibles: &[GFPoly],
    numerator: &GFPoly,
    denominator: &GFPoly,
) -> Result<ASRep> {
    if denominator.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    let lead = field.inv(denominator.leading());
    let numerator = numerator.scale(lead, field);
    let denominator = denominator.monic(field);
    let (poly_part, rem) = numerator.div_rem(&denominator, field);

    let mut factors = Vec::new();
    let mut rest = denominator.clone();
    for prime in irreducibles {
        if rest.degree() == Some(0) {
            break;
        }
        let mut e = 0u64;
        loop {
            let (quot, r) = rest.div_rem(prime, field);
            if !r.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        if e > 0 {
            factors.push((prime.clone(), e));
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::InvalidInput(format!(
            "denominator has a prime factor beyond the supplied irreducibles: {:?}",
            rest.coeffs()
        )));
    }

    let p = field.p() as u64;
    let mut rep = ASRep::default();
    for (prime, e) in factors {
        let local = prime.pow(e, field);
        let (cofactor, _) = denominator.div_rem(&local, field);
        let inv = cofactor
            .inv_mod(&local, field)
            .ok_or_else(|| Error::Inconsistent("coprime cofactor is not invertible".into()))?;
        let mut a = rem.mul(&inv, field).rem(&local, field);
        // digits[j] is the coefficient of 1/P^j
        let mut digits = vec![GFPoly::zero(); e as usize + 1];
        for i in 0..e {
            let (q, g) = a.div_rem(&prime, field);
            digits[(e - i) as usize] = g;
            a = q;
        }
        let residue_size = (field.q() as u64).pow(prime.degree().unwrap() as u32);
        for j in (1..=e).rev() {
            if j % p != 0 || digits[j as usize].is_zero() {
                continue;
            }
            // b^p = h_j mod P; subtract b^p / P^j - b / P^{j/p}
            let b = digits[j as usize].pow_mod(residue_size / p, &prime, field);
            let mut bp = b.pow(p, field);
            let mut i = 0u64;
            while !bp.is_zero() {
                let (q, g) = bp.div_rem(&prime, field);
                let slot = (j - i) as usize;
                digits[slot] = digits[slot].sub(&g, field);
                bp = q;
                i += 1;
            }
            let slot = (j / p) as usize;
            digits[slot] = digits[slot].add(&b, field);
        }
        let local: BTreeMap<u64, GFPoly> =
            digits.into_iter().enumerate().skip(1).filter(|(_, h)| !h.is_zero()).map(|(j, h)| (j as u64, h)).collect();
        if !local.is_empty() {
            rep.finite.insert(prime, local);
        }
    }

    let mut coeffs: Vec<GFElement> = poly_part.coeffs().to_vec();
    for d in (1..coeffs.len()).rev() {
        if !(d as u64).is_multiple_of(p) || coeffs[d] == 0 {
            continue;
        }
        let b = field.frobenius_inv(coeffs[d]);
        coeffs[d] = 0;
        let low = d / p as usize;
        coeffs[low] = field.add(coeffs[low], b);
    }
    if let Some(&c) = coeffs.first() {
        rep.constant = field.trace(c);
    }
    for (d, &a) in coeffs.iter().enumerate().skip(1) {
        if a != 0 {
            rep.infinity.insert(d as u64, a);
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
struct LayoutPlace {
    place: Place,
    poly: Option<GFPoly>,
    degree: u64,
    /// `(j, offset)` for each admissible digit.
    digits: Vec<(u64, usize)>,
}

/// Coordinates over `F_p` for the classes whose conductor has degree at most `bound`.
#[derive(Clone, Debug)]
pub struct ClassLayout {
    field: GaloisField,
    bound: u64,
    places: Vec<LayoutPlace>,
    dim: usize,
}

/// Top digit per layout place; zero when the class is unramified there.
pub type Profile = Vec<u64>;

/// (top digit, cost, sparse coordinates) of one local choice.
type LocalOption = (u64, u64, Vec<(usize, u8)>);

impl ClassLayout {
    pub fn new(field: GaloisField, irreducibles: &[GFPoly], bound: u64) -> Self {
        let p = field.p() as u64;
        let k = field.degree() as usize;
        let mut dim = 1;
        let mut places = Vec::new();
        let candidates = core::iter::once((Place::Infinity, None, 1u64))
            .chain(irreducibles.iter().map(|g| (place_of(g), Some(g.clone()), g.degree().unwrap() as u64)));
        for (place, poly, degree) in candidates {
            if 2 * degree > bound {
                continue;
            }
            let mut digits = Vec::new();
            let mut j = 1;
            while (j + 1) * degree <= bound {
                if j % p != 0 {
                    digits.push((j, dim));
                    dim += degree as usize * k;
                }
                j += 1;
            }
            places.push(LayoutPlace { place, poly, degree, digits });
        }
        Self { field, bound, places, dim }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn profile(&self, v: &[u8]) -> Profile {
        self.places
            .iter()
            .map(|lp| {
                let width = lp.degree as usize * self.field.degree() as usize;
                lp.digits
                    .iter()
                    .rev()
                    .find(|(_, off)| v[*off..*off + width].iter().any(|&c| c != 0))
                    .map_or(0, |(j, _)| *j)
            })
            .collect()
    }

    pub fn profile_degree(&self, profile: &[u64]) -> u64 {
        self.places.iter().zip(profile).filter(|(_, &top)| top > 0).map(|(lp, &top)| (top + 1) * lp.degree).sum()
    }

    pub fn profile_conductor(&self, profile: &[u64]) -> DivisorModule {
        DivisorModule::from_entries(
            self.places
                .iter()
                .zip(profile)
                .filter(|(_, &top)| top > 0)
                .map(|(lp, &top)| (lp.place.clone(), top as u32 + 1)),
        )
    }

    pub fn to_rep(&self, v: &[u8]) -> ASRep {
        let f = &self.field;
        let k = f.degree() as usize;
        let element = |off: usize| -> GFElement {
            let c: Vec<u32> = v[off..off + k].iter().map(|&x| x as u32).collect();
            f.from_coordinates(&c)
        };
        let mut rep = ASRep { constant: v[0] as u32, ..ASRep::default() };
        for lp in &self.places {
            let mut local = BTreeMap::new();
            for &(j, off) in &lp.digits {
                let coeffs: Vec<GFElement> = (0..lp.degree as usize).map(|i| element(off + i * k)).collect();
                let h = GFPoly::new(coeffs);
                if !h.is_zero() {
                    local.insert(j, h);
                }
            }
            match &lp.poly {
                None => {
                    rep.infinity = local.into_iter().map(|(j, h)| (j, h.coeff(0))).collect();
                }
                Some(g) if !local.is_empty() => {
                    rep.finite.insert(g.clone(), local);
                }
                Some(_) => {}
            }
        }
        rep
    }

    pub fn from_rep(&self, rep: &ASRep) -> Result<Vec<u8>> {
        let f = &self.field;
        let k = f.degree() as usize;
        let mut v = vec![0u8; self.dim];
        v[0] = rep.constant as u8;
        let outside = || Error::InvalidInput("representative lies outside the layout".into());
        let put = |v: &mut [u8], off: usize, a: GFElement| {
            for (i, c) in f.coordinates(a).into_iter().enumerate() {
                v[off + i] = c as u8;
            }
        };
        let mut used = 0;
        for lp in &self.places {
            let local: BTreeMap<u64, GFPoly> = match &lp.poly {
                None => rep.infinity.iter().map(|(&j, &a)| (j, GFPoly::constant(a))).collect(),
                Some(g) => rep.finite.get(g).cloned().unwrap_or_default(),
            };
            for (j, h) in &local {
                let &(_, off) = lp.digits.iter().find(|(d, _)| d == j).ok_or_else(outside)?;
                for (i, &c) in h.coeffs().iter().enumerate() {
                    put(&mut v, off + i * k, c);
                }
            }
            if lp.poly.is_some() && !local.is_empty() {
                used += 1;
            }
        }
        if used != rep.finite.len() {
            return Err(outside());
        }
        Ok(v)
    }

    /// Calls `visit` on every nonzero class with conductor degree at most the bound.
    ///
    /// Fails once more than `budget` classes have been produced.
    pub fn for_each_class<F: FnMut(&[u8], &Profile)>(&self, budget: u64, mut visit: F) -> Result<u64> {
        let p = self.field.p() as u8;
        let k = self.field.degree() as usize;
        // local options per place: (top digit, cost, sparse coordinates)
        let mut options: Vec<Vec<LocalOption>> = Vec::new();
        for lp in &self.places {
            let width = lp.degree as usize * k;
            let mut opts = Vec::new();
            for (idx, &(top, top_off)) in lp.digits.iter().enumerate() {
                let cost = (top + 1) * lp.degree;
                let offsets: Vec<usize> = lp.digits[..=idx].iter().flat_map(|&(_, off)| off..off + width).collect();
                let mut counter = vec![0u8; offsets.len()];
                loop {
                    // advance an F_p odometer
                    let mut pos = 0;
                    while pos < counter.len() {
                        counter[pos] += 1;
                        if counter[pos] < p {
                            break;
                        }
                        counter[pos] = 0;
                        pos += 1;
                    }
                    if pos == counter.len() {
                        break;
                    }
                    let top_nonzero =
                        offsets.iter().zip(&counter).any(|(&o, &c)| c != 0 && o >= top_off && o < top_off + width);
                    if top_nonzero {
                        let sparse =
                            offsets.iter().zip(&counter).filter(|(_, &c)| c != 0).map(|(&o, &c)| (o, c)).collect();
                        opts.push((top, cost, sparse));
                    }
                }
            }
            options.push(opts);
        }

        struct Walk<'a, F> {
            options: &'a [Vec<LocalOption>],
            visit: F,
            produced: u64,
            budget: u64,
            p: u8,
        }
        impl<F: FnMut(&[u8], &Profile)> Walk<'_, F> {
            fn go(&mut self, place: usize, remaining: u64, v: &mut Vec<u8>, profile: &mut Profile) -> Result<()> {
                if place == self.options.len() {
                    for c in 0..self.p {
                        v[0] = c;
                        if v.iter().all(|&x| x == 0) {
                            continue;
                        }
                        self.produced += 1;
                        if self.produced > self.budget {
                            return Err(Error::BudgetExceeded { budget: self.budget });
                        }
                        (self.visit)(v, profile);
                    }
                    v[0] = 0;
                    return Ok(());
                }
                self.go(place + 1, remaining, v, profile)?;
                let opts = &self.options[place];
                for (top, cost, sparse) in opts.iter() {
                    if *cost > remaining {
                        continue;
                    }
                    for &(o, c) in sparse {
                        v[o] = c;
                    }
                    profile[place] = *top;
                    self.go(place + 1, remaining - cost, v, profile)?;
                    profile[place] = 0;
                    for &(o, _) in sparse {
                        v[o] = 0;
                    }
                }
                Ok(())
            }
        }
        let mut walk = Walk { options: &options, visit: &mut visit, produced: 0, budget, p };
        let mut v = vec![0u8; self.dim];
        let mut profile = vec![0u64; self.places.len()];
        walk.go(0, self.bound, &mut v, &mut profile)?;
        Ok(walk.produced)
    }
}
