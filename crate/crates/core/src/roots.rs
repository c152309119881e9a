//! Complex roots of square-free rational polynomials by Aberth iteration.

use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::real::{Complex, Real};

const MAX_ITERATIONS: usize = 400;

/// Evaluates a polynomial with complex coefficients and its derivative.
fn eval_with_derivative(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let prec = z.precision();
    let mut value = Complex::zero(prec);
    let mut deriv = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        deriv = &(&deriv * z) + &value;
        value = &(&value * z) + c;
    }
    (value, deriv)
}

pub fn eval_rational_poly(poly: &QPoly, z: &Complex) -> Complex {
    let prec = z.precision();
    poly.coeffs().iter().rev().fold(Complex::zero(prec), |acc, c| &(&acc * z) + &Complex::from_rational(c, prec))
}

fn aberth_pass(coeffs: &[Complex], roots: &mut [Complex], tol_exp: i64) -> bool {
    let n = roots.len();
    let mut converged = true;
    for k in 0..n {
        let (value, deriv) = eval_with_derivative(coeffs, &roots[k]);
        if value.is_zero() {
            continue;
        }
        let prec = roots[k].precision();
        let ratio = &value / &deriv;
        let mut repulsion = Complex::zero(prec);
        for j in 0..n {
            if j != k {
                let diff = &roots[k] - &roots[j];
                if !diff.is_zero() {
                    repulsion = &repulsion + &diff.recip();
                }
            }
        }
        let denom = &Complex::one(prec) - &(&ratio * &repulsion);
        let step = if denom.is_zero() { ratio } else { &ratio / &denom };
        let size = step.abs().magnitude_exp();
        let scale = roots[k].abs().magnitude_exp().unwrap_or(0);
        if size.is_some_and(|s| s - scale > tol_exp) {
            converged = false;
        }
        roots[k] = &roots[k] - &step;
    }
    converged
}

fn iterate(coeffs: &[Complex], roots: &mut [Complex], tol_exp: i64) -> bool {
    for _ in 0..MAX_ITERATIONS {
        if aberth_pass(coeffs, roots, tol_exp) {
            return true;
        }
    }
    false
}

/// All complex roots of a square-free polynomial, to roughly `prec` bits.
pub fn find_roots(poly: &QPoly, prec: u32) -> Result<Vec<Complex>> {
    let degree = poly.degree().ok_or_else(|| Error::InvalidInput("zero polynomial has no isolated roots".into()))?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let monic = poly.monic();
    let to_complex = |p: u32| -> Vec<Complex> { monic.coeffs().iter().map(|c| Complex::from_rational(c, p)).collect() };

    // start on a circle of the geometric-mean radius, rotated off any symmetry axis
    let c0 = monic.coeff(0);
    let mean = if c0.is_zero() {
        1.0
    } else {
        let v = c0.numer().to_f64().unwrap_or(f64::MAX).abs() / c0.denom().to_f64().unwrap_or(f64::MAX);
        if v.is_finite() && v > 0.0 {
            Real::from_f64(v, 64).nth_root(degree as u32).to_f64()
        } else {
            1.0
        }
    };
    let low = 96;
    let mut roots: Vec<Complex> = (0..degree)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            let radius = mean * (1.0 + 0.05 * k as f64 / degree as f64);
            Complex::new(Real::from_f64(radius * libm_cos(angle), low), Real::from_f64(radius * libm_sin(angle), low))
        })
        .collect();
    if !iterate(&to_complex(low), &mut roots, -80) {
        return Err(Error::Precision(format!("root iteration did not settle for degree {degree}")));
    }
    let work = prec + 32;
    let mut roots: Vec<Complex> =
        roots.into_iter().map(|z| Complex::new(z.re.with_precision(work), z.im.with_precision(work))).collect();
    if !iterate(&to_complex(work), &mut roots, -(prec as i64) - 8) {
        return Err(Error::Precision(format!("root refinement did not settle at {prec} bits")));
    }
    Ok(roots)
}

fn libm_cos(x: f64) -> f64 {
    Real::from_f64(x, 64).cos_sin().0.to_f64()
}

fn libm_sin(x: f64) -> f64 {
    Real::from_f64(x, 64).cos_sin().1.to_f64()
}

/// Exact rational roots among `candidates`.
pub fn rational_roots_among(poly: &QPoly, candidates: &[BigRational]) -> Vec<BigRational> {
    candidates.iter().filter(|c| poly.eval(c).is_zero()).cloned().collect()
}
