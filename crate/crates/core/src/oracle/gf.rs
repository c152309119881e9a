//! Table-driven arithmetic in `F_q` and dense polynomials over it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power_exponent};

/// An element of `F_q`: the base-`p` digits of the index are its coordinates
/// in the power basis of a fixed primitive element.
pub type GFElement = u32;

/// Largest field size the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
    trace_one: u32,
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::Unsupported(format!("field size {q} exceeds {MAX_FIELD_SIZE}")));
        }
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        let k = prime_power_exponent(p, q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        let (p, q) = (p as u32, q as u32);

        // search for a primitive modulus x^k + c_{k-1} x^{k-1} + ... + c_0
        let mut found = None;
        for lower in 0..q {
            let c = digits(lower, p, k);
            if c[0] == 0 {
                continue;
            }
            let mut cur = vec![0u32; k as usize];
            cur[0] = 1;
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut ok = true;
            for i in 0..q - 1 {
                let v = undigits(&cur, p);
                if i > 0 && v == 1 {
                    ok = false;
                    break;
                }
                exp.push(v);
                // multiply by x modulo the candidate
                let top = cur[k as usize - 1];
                for j in (1..k as usize).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                for j in 0..k as usize {
                    cur[j] = (cur[j] + (p - c[j]) * top) % p;
                }
            }
            if ok && undigits(&cur, p) == 1 {
                found = Some(exp);
                break;
            }
        }
        let exp = found.ok_or_else(|| Error::Inconsistent(format!("no primitive polynomial for F_{q}")))?;
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut field = Self { p, degree: k, q, exp, log, add_table: Vec::new(), trace_one: 0 };
        if q <= 256 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_slow(a, b);
                }
            }
            field.add_table = table;
        }
        field.trace_one = (1..q).find(|&c| field.trace(c) == 1).expect("the trace map is onto F_p");
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `[F_q : F_p]`
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// A fixed element of trace one; the constant classes are its `F_p`-multiples.
    pub fn trace_one(&self) -> GFElement {
        self.trace_one
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn add(&self, a: GFElement, b: GFElement) -> GFElement {
        if self.add_table.is_empty() {
            self.add_slow(a, b)
        } else {
            self.add_table[(a * self.q + b) as usize]
        }
    }

    pub fn neg(&self, a: GFElement) -> GFElement {
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: GFElement, b: GFElement) -> GFElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GFElement, b: GFElement) -> GFElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: GFElement) -> GFElement {
        assert!(a != 0, "inverse of zero");
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: GFElement, e: u64) -> GFElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    pub fn frobenius(&self, a: GFElement) -> GFElement {
        self.pow(a, self.p as u64)
    }

    pub fn frobenius_inv(&self, a: GFElement) -> GFElement {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// Absolute trace to `F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: GFElement) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// The image of `k in F_p`.
    pub fn from_prime(&self, k: u32) -> GFElement {
        k % self.p
    }

    /// Coordinates over `F_p`.
    pub fn coordinates(&self, a: GFElement) -> Vec<u32> {
        digits(a, self.p, self.degree)
    }

    pub fn from_coordinates(&self, c: &[u32]) -> GFElement {
        undigits(c, self.p)
    }
}

/// A polynomial over `F_q`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GFPoly {
    coeffs: Vec<GFElement>,
}

impl GFPoly {
    pub fn new(mut coeffs: Vec<GFElement>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GFElement) -> Self {
        Self::new(vec![c])
    }

    /// `c x^n`
    pub fn monomial(c: GFElement, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[GFElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GFElement {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> GFElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, f: &GaloisField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, f: &GaloisField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: GFElement, f: &GaloisField) -> Self {
        Self::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &GaloisField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u64, f: &GaloisField) -> Self {
        let mut result = Self::constant(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        result
    }

    pub fn div_rem(&self, divisor: &Self, f: &GaloisField) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..rem.len() - dd).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self, f: &GaloisField) -> Self {
        self.div_rem(divisor, f).1
    }

    pub fn monic(&self, f: &GaloisField) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(f.inv(self.leading()), f)
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, e: u64, modulus: &Self, f: &GaloisField) -> Self {
        let mut result = Self::constant(1).rem(modulus, f);
        let mut base = self.rem(modulus, f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            e >>= 1;
        }
        result
    }

    /// `(g, s)` with `g = gcd(self, modulus)` monic and `s * self = g mod modulus`.
    pub fn ext_gcd(&self, modulus: &Self, f: &GaloisField) -> (Self, Self) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, f));
        let (mut s0, mut s1) = (Self::zero(), Self::constant(1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, f);
            let s = s0.sub(&q.mul(&s1, f), f);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        let c = f.inv(r0.leading());
        (r0.scale(c, f), s0.scale(c, f))
    }

    /// Inverse modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &Self, f: &GaloisField) -> Option<Self> {
        let (g, s) = self.ext_gcd(modulus, f);
        (g == Self::constant(1)).then(|| s.rem(modulus, f))
    }

    /// Applies `a -> a^p` to every coefficient.
    pub fn map_coeffs<F: Fn(GFElement) -> GFElement>(&self, g: F) -> Self {
        Self::new(self.coeffs.iter().map(|&a| g(a)).collect())
    }
}

/// Every monic polynomial of degree `d` over `F_q`.
fn monic_of_degree(f: &GaloisField, d: usize) -> impl Iterator<Item = GFPoly> + '_ {
    let q = f.q() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((idx % q) as u32);
            idx /= q;
        }
        coeffs.push(1);
        GFPoly::new(coeffs)
    })
}

/// Monic irreducible polynomials of degree `1..=max_degree`, by degree then lexicographically.
pub fn irreducibles_up_to(f: &GaloisField, max_degree: usize) -> Vec<GFPoly> {
    let mut out: Vec<GFPoly> = Vec::new();
    for d in 1..=max_degree {
        let mut level = Vec::new();
        for cand in monic_of_degree(f, d) {
            let reducible = out.iter().take_while(|g| 2 * g.degree().unwrap() <= d).any(|g| cand.rem(g, f).is_zero());
            if !reducible {
                level.push(cand);
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius is additive
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
            }
            assert_eq!(f.trace(f.trace_one()), 1);
        }
    }

    #[test]
    fn irreducibles_over_f2() {
        let f = GaloisField::new(2).unwrap();
        let got = irreducibles_up_to(&f, 3);
        let want: Vec<GFPoly> = [vec![0, 1], vec![1, 1], vec![1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1]]
            .into_iter()
            .map(GFPoly::new)
            .collect();
        let mut sorted = want.clone();
        sorted.sort_by_key(|p| p.degree());
        assert_eq!(got.len(), 5);
        for w in want {
            assert!(got.contains(&w));
        }
        let f3 = GaloisField::new(3).unwrap();
        assert_eq!(irreducibles_up_to(&f3, 1).len(), 3);
    }

    #[test]
    fn polynomial_inverse_mod() {
        let f = GaloisField::new(5).unwrap();
        let m = GFPoly::new(vec![2, 0, 1]); // x^2 + 2, irreducible mod 5
        let a = GFPoly::new(vec![3, 4]);
        let inv = a.inv_mod(&m, &f).unwrap();
        assert_eq!(a.mul(&inv, &f).rem(&m, &f), GFPoly::constant(1));
    }
}
