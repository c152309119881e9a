//! Binary floating point with a configurable mantissa width, plus complex
//! numbers over it. Values are `mant * 2^exp` with `|mant| < 2^prec`.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision used when the caller does not pick one.
pub const DEFAULT_PRECISION: u32 = 200;

#[derive(Clone)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl Real {
    fn normalized(mut mant: BigInt, mut exp: i64, prec: u32) -> Self {
        let bits = mant.bits();
        if bits > prec as u64 {
            let shift = bits - prec as u64;
            // round half away from zero
            let negative = mant.is_negative();
            let mut m = mant.magnitude().clone();
            let half = BigUint::one() << (shift - 1);
            m += half;
            m >>= shift;
            mant = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, m);
            exp += shift as i64;
        }
        if mant.is_zero() {
            exp = 0;
        }
        Self { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(BigInt::one(), prec)
    }

    pub fn from_int(n: BigInt, prec: u32) -> Self {
        Self::normalized(n, 0, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(BigInt::from(n), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let den_bits = r.denom().bits() as i64;
        let shift = prec as i64 + den_bits + 2;
        let mant = (r.numer() << shift as usize) / r.denom();
        Self::normalized(mant, -shift, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exponent == 0 { (fraction, -1074) } else { (fraction | (1u64 << 52), exponent - 1075) };
        Self::normalized(BigInt::from(mant) * sign, exp, prec)
    }

    /// `2^e`
    pub fn pow2(e: i64, prec: u32) -> Self {
        Self { mant: BigInt::one(), exp: e, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Binary exponent of the leading bit, `floor(log2 |x|)`; `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64 - 1)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = 60.min(bits);
        let top = (&self.mant >> (bits - keep) as usize).to_f64().unwrap();
        let e = self.exp + bits - keep;
        if e > 1023 {
            return top.signum() * f64::INFINITY;
        }
        if e < -1100 {
            return 0.0;
        }
        // split the scaling to avoid intermediate overflow/underflow
        let half = e / 2;
        top * pow2_f64(half) * pow2_f64(e - half)
    }

    pub fn recip(&self) -> Self {
        Real::one(self.prec) / self.clone()
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut result = Real::one(self.prec);
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            result.recip()
        } else {
            result
        }
    }

    /// Positive `n`-th root of a nonnegative value.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(!self.is_negative(), "root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let n64 = n as i64;
        let target_bits = n64 * (self.prec as i64 + 4);
        let mut shift = (target_bits - self.mant.bits() as i64).max(0);
        // make exp - shift divisible by n
        shift += (self.exp - shift).rem_euclid(n64);
        let m = &self.mant << shift as usize;
        let root = m.nth_root(n);
        Self::normalized(root, (self.exp - shift) / n64, self.prec)
    }

    pub fn sqrt(&self) -> Self {
        self.nth_root(2)
    }

    /// `|self - other| <= tol * max(|self|, |other|, floor)`.
    pub fn approx_eq(&self, other: &Real, rel_tol: &Real, floor: &Real) -> bool {
        let scale = max_real(&max_real(&self.abs(), &other.abs()), floor);
        (self - other).abs() <= rel_tol * &scale
    }

    pub fn pi(prec: u32) -> Self {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239), in fixed point
        let guard = prec + 16;
        let one = BigInt::one() << guard as usize;
        let atan_inv = |x: i64| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut term = &one / x;
            let mut sum = term.clone();
            let mut k = 1i64;
            loop {
                term /= &x2;
                if term.is_zero() {
                    break;
                }
                let t = &term / (2 * k + 1);
                if k % 2 == 1 {
                    sum -= t;
                } else {
                    sum += t;
                }
                k += 1;
            }
            sum
        };
        let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
        Self::normalized(pi, -(guard as i64), prec)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero() && !self.is_negative(), "logarithm of a nonpositive number");
        let prec = self.prec;
        let work = prec + 32;
        // x = m * 2^k with m in [1, 2)
        let k = self.magnitude_exp().unwrap();
        let m = Real { mant: self.mant.clone(), exp: self.exp - k, prec: work };
        let ln2 = atanh_series(&(Real::one(work) / Real::from_i64(3, work))) * Real::from_i64(2, work);
        let z = &(&m - &Real::one(work)) / &(&m + &Real::one(work));
        let ln_m = atanh_series(&z) * Real::from_i64(2, work);
        (ln_m + ln2 * Real::from_i64(k, work)).with_precision(prec)
    }

    /// `(cos x, sin x)` by Taylor series after reduction modulo `2 pi`.
    pub fn cos_sin(&self) -> (Self, Self) {
        let prec = self.prec;
        let extra = self.magnitude_exp().unwrap_or(0).max(0) as u32;
        let work = prec + 32 + extra;
        let x = self.with_precision(work);
        let two_pi = Real::pi(work) * Real::from_i64(2, work);
        let turns = (&x / &two_pi).floor_int();
        let x = &x - &(two_pi * Real::from_int(turns, work));
        let mut cos = Real::one(work);
        let mut sin = x.clone();
        let x2 = x.sqr();
        let mut term_c = Real::one(work);
        let mut term_s = x.clone();
        let limit = -(work as i64) - 4;
        let mut k = 1i64;
        loop {
            term_c = -(&term_c * &x2) / Real::from_i64((2 * k - 1) * (2 * k), work);
            term_s = -(&term_s * &x2) / Real::from_i64((2 * k) * (2 * k + 1), work);
            cos = &cos + &term_c;
            sin = &sin + &term_s;
            let small = |t: &Real| t.magnitude_exp().is_none_or(|e| e < limit);
            if small(&term_c) && small(&term_s) {
                break;
            }
            k += 1;
        }
        (cos.with_precision(prec), sin.with_precision(prec))
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten = num_traits::pow(BigUint::from(10u32), digits);
        let mag = self.mant.magnitude() * &ten;
        let scaled = if self.exp >= 0 {
            mag << self.exp as usize
        } else {
            let shift = (-self.exp) as usize;
            (mag + (BigUint::one() << (shift - 1))) >> shift
        };
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        let int_part = &scaled / &ten;
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        let frac = (&scaled % &ten).to_string();
        format!("{sign}{int_part}.{frac:0>digits$}")
    }

    /// Largest integer not exceeding the value.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            // arithmetic shift rounds toward negative infinity
            &self.mant >> (-self.exp) as usize
        }
    }
}

fn pow2_f64(e: i64) -> f64 {
    let mut v = 1.0f64;
    let step = if e >= 0 { 2.0 } else { 0.5 };
    for _ in 0..e.unsigned_abs() {
        v *= step;
    }
    v
}

/// `sum z^{2k+1} / (2k+1)` for `|z| < 1`.
fn atanh_series(z: &Real) -> Real {
    let prec = z.prec;
    let limit = -(prec as i64) - 4;
    let z2 = z.sqr();
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1i64;
    loop {
        power = &power * &z2;
        let term = &power / &Real::from_i64(2 * k + 1, prec);
        sum = &sum + &term;
        if term.magnitude_exp().is_none_or(|e| e < limit) {
            break;
        }
        k += 1;
    }
    sum
}

pub fn max_real(a: &Real, b: &Real) -> Real {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_precision(prec);
        }
        if rhs.is_zero() {
            return self.with_precision(prec);
        }
        let top_a = self.magnitude_exp().unwrap();
        let top_b = rhs.magnitude_exp().unwrap();
        if top_a - top_b > prec as i64 + 2 {
            return self.with_precision(prec);
        }
        if top_b - top_a > prec as i64 + 2 {
            return rhs.with_precision(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Real::normalized(a + b, e, prec)
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, self.prec.max(rhs.prec))
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        let shift = prec as i64 + rhs.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let shift = shift.max(0);
        let num = &self.mant << shift as usize;
        Real::normalized(num / &rhs.mant, self.exp - rhs.exp - shift, prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($($Op:ident $op:ident),*) => {$(
        impl $Op<Real> for Real {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real { (&self).$op(&rhs) }
        }
        impl<'a> $Op<&'a Real> for Real {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real { (&self).$op(rhs) }
        }
        impl<'a> $Op<Real> for &'a Real {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real { self.$op(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// A complex number with [`Real`] parts.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.precision();
        Self { re, im: Real::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(Real::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(Real::one(prec))
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self::from_real(Real::from_rational(r, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    /// `exp(2 pi i * num / den)`
    pub fn root_of_unity(num: i64, den: u64, prec: u32) -> Self {
        let num = num.rem_euclid(den as i64);
        // exact values at the quarter turns keep real poles exactly real
        if (4 * num) % den as i64 == 0 {
            let quarter = 4 * num / den as i64;
            let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
            return Self::new(Real::from_i64(re, prec), Real::from_i64(im, prec));
        }
        let angle = Real::pi(prec + 16) * Real::from_i64(2 * num, prec + 16) / Real::from_i64(den as i64, prec + 16);
        let (c, s) = angle.cos_sin();
        Self::new(c.with_precision(prec), s.with_precision(prec))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut result = Complex::one(self.precision());
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            result.recip()
        } else {
            result
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut result = Complex::one(self.precision());
        for i in (0..e.bits()).rev() {
            result = &result * &result;
            if e.bit(i) {
                result = &result * self;
            }
        }
        result
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        Complex::new(re / &n, im / &n)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned_complex {
    ($($Op:ident $op:ident),*) => {$(
        impl $Op<Complex> for Complex {
            type Output = Complex;
            fn $op(self, rhs: Complex) -> Complex { (&self).$op(&rhs) }
        }
        impl<'a> $Op<&'a Complex> for Complex {
            type Output = Complex;
            fn $op(self, rhs: &Complex) -> Complex { (&self).$op(rhs) }
        }
    )*};
}
forward_owned_complex!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let third = Real::from_rational(&BigRational::new(1.into(), 3.into()), 128);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        assert_eq!((-&third).to_decimal(4), "-0.3333");
        assert_eq!(Real::from_i64(2, 64).to_decimal(6), "2.000000");
        assert_eq!(Real::from_f64(-0.00004, 64).to_decimal(3), "0.000");
        assert_eq!(Real::from_i64(1234, 64).to_decimal(0), "1234");
    }

    const P: u32 = 200;

    fn close(a: &Real, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn field_operations() {
        let a = Real::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)), P);
        let b = Real::from_i64(3, P);
        let one = &a * &b;
        assert!((&one - &Real::one(P)).abs() < Real::pow2(-190, P));
        assert!(close(&(&a + &b), 10.0 / 3.0, 1e-15));
        assert!(close(&(&b / &a), 9.0, 1e-15));
        assert_eq!(Real::from_f64(0.75, P), Real::from_rational(&BigRational::new(3.into(), 4.into()), P));
    }

    #[test]
    fn roots_and_constants() {
        let two = Real::from_i64(2, P);
        let s = two.sqrt();
        assert!((&s * &s - &two).abs() < Real::pow2(-190, P));
        let c = Real::from_i64(27, P).nth_root(3);
        assert!((c - Real::from_i64(3, P)).abs() < Real::pow2(-190, P));
        assert!(close(&Real::pi(P), core::f64::consts::PI, 1e-15));
        assert!(close(&two.ln(), core::f64::consts::LN_2, 1e-15));
        assert!(close(&Real::from_i64(13, P).ln(), 13f64.ln(), 1e-15));
        assert!(close(&Real::from_f64(0.1, P).ln(), 0.1f64.ln(), 1e-14));
    }

    #[test]
    fn trigonometry_is_accurate_beyond_double() {
        let x = Real::pi(P) / Real::from_i64(3, P);
        let (c, s) = x.cos_sin();
        // cos(pi/3) = 1/2 exactly; sin^2 = 3/4
        assert!((&c - &Real::from_f64(0.5, P)).abs() < Real::pow2(-180, P));
        assert!((s.sqr() - Real::from_f64(0.75, P)).abs() < Real::pow2(-180, P));
    }

    #[test]
    fn roots_of_unity() {
        for den in 1..=12u64 {
            let z = Complex::root_of_unity(1, den, P);
            let w = z.powi(den as i64);
            assert!((&w.re - &Real::one(P)).abs() < Real::pow2(-170, P));
            assert!(w.im.abs() < Real::pow2(-170, P));
        }
    }

    #[test]
    fn ordering_and_floor() {
        assert!(Real::from_f64(-1.5, P) < Real::from_f64(0.25, P));
        assert_eq!(Real::from_f64(-1.5, P).floor_int(), BigInt::from(-2));
        assert_eq!(Real::from_f64(7.99, P).floor_int(), BigInt::from(7));
    }
}
