//! Coefficient asymptotics for power series whose only singularities on the
//! circle of convergence `|t| = R` are poles at `R` times roots of unity.
//!
//! If `f` has poles of maximal order `b` at `u_j = R xi^{-j}` with principal
//! coefficients `p_j`, then
//! `c_n ~ sum_j (-u_j)^{-b} p_j xi^{jn} R^{-n} n^{b-1} / (b-1)!` and the partial
//! sums pick up an extra factor `1 / (1 - u_j)`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::GroupSpec;
use crate::dirichlet::{abscissa, euler_tail_log_bound, q_pow_rational, RationalFunctionT};
use crate::error::{Error, Result};
use crate::field::FieldModel;
use crate::poly::QPoly;
use crate::real::{Complex, Real};
use crate::roots::{eval_rational_poly, find_roots, rational_roots_among};
use crate::series::TruncatedSeries;

/// Largest root-of-unity order searched when classifying pole angles.
const MAX_ANGLE_ORDER: u64 = 10_000;

/// Principal data of the poles of maximal order on the circle of convergence.
#[derive(Clone, Debug)]
pub struct MeromorphicModel {
    radius: Real,
    radius_exact: Option<BigRational>,
    pole_order: u32,
    root_count: u64,
    principal: BTreeMap<u64, Complex>,
    principal_exact: BTreeMap<u64, BigRational>,
    prec: u32,
}

impl MeromorphicModel {
    pub fn radius(&self) -> &Real {
        &self.radius
    }

    pub fn radius_exact(&self) -> Option<&BigRational> {
        self.radius_exact.as_ref()
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    /// `ell`: the poles sit at `R xi^{-j}` with `xi = exp(2 pi i / ell)`.
    pub fn root_count(&self) -> u64 {
        self.root_count
    }

    /// `j -> p_j` for the poles of maximal order.
    pub fn principal_coeffs(&self) -> &BTreeMap<u64, Complex> {
        &self.principal
    }

    /// Exact `p_j` for rational poles with rational data.
    pub fn principal_exact(&self) -> &BTreeMap<u64, BigRational> {
        &self.principal_exact
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn xi_power(&self, k: i64) -> Complex {
        Complex::root_of_unity(k, self.root_count, self.prec)
    }

    fn pole(&self, j: u64) -> Complex {
        self.xi_power(-(j as i64)).scale(&self.radius)
    }

    /// Period of the leading behaviour: lcm of the orders of `xi^j` over poles of maximal order.
    pub fn effective_progression(&self) -> u64 {
        self.principal.keys().map(|&j| self.root_count / self.root_count.gcd(&j)).fold(1, |acc, k| acc.lcm(&k))
    }
}

/// Multiplier applied to every principal coefficient, for products
/// `f = h * g` with `h` holomorphic on a neighbourhood of the closed disc.
pub type Correction<'a> = &'a dyn Fn(&Complex) -> Result<Complex>;
pub type BoxedCorrection<'a> = Box<dyn Fn(&Complex) -> Result<Complex> + 'a>;

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

fn nth_derivative(poly: &QPoly, n: u32) -> QPoly {
    (0..n).fold(poly.clone(), |acc, _| acc.derivative())
}

fn f64_turn(w: &Complex) -> f64 {
    let (re, im) = w.to_f64_pair();
    let t = libm_atan2(im, re) / (2.0 * core::f64::consts::PI);
    if t < 0.0 {
        t + 1.0
    } else {
        t
    }
}

// atan2 without std: reduce to atan on [0, 1] and sum its series via Real
fn libm_atan2(y: f64, x: f64) -> f64 {
    let pi = core::f64::consts::PI;
    if x == 0.0 && y == 0.0 {
        return 0.0;
    }
    let (ax, ay) = (x.abs(), y.abs());
    let (small, swapped) = if ay <= ax { (ay / ax, false) } else { (ax / ay, true) };
    let mut a = atan_unit(small);
    if swapped {
        a = pi / 2.0 - a;
    }
    if x < 0.0 {
        a = pi - a;
    }
    if y < 0.0 {
        -a
    } else {
        a
    }
}

fn atan_unit(z: f64) -> f64 {
    // atan z = 2 atan(z / (1 + sqrt(1 + z^2))) brings z below tan(pi/8)
    let zr = Real::from_f64(z, 80);
    let one = Real::one(80);
    let halved = &zr / &(&one + &(&one + &zr.sqr()).sqrt());
    let h2 = halved.sqr();
    let mut term = halved.clone();
    let mut sum = halved;
    for k in 1..60 {
        term = -(&term * &h2);
        sum = &sum + &(&term / &Real::from_i64(2 * k + 1, 80));
    }
    2.0 * sum.to_f64()
}

/// Smallest `k` with `w^k = 1` to working accuracy, together with `j` such that `w = exp(2 pi i j / k)`.
fn root_of_unity_order(w: &Complex, prec: u32) -> Option<(u64, u64)> {
    let turn = f64_turn(w);
    let tol = Real::pow2(-(prec as i64) / 2, prec);
    for k in 1..=MAX_ANGLE_ORDER {
        let j = libm_round(turn * k as f64);
        if (turn * k as f64 - j).abs() > 1e-9 * k as f64 {
            continue;
        }
        let j = (j as i64).rem_euclid(k as i64) as u64;
        if j.gcd(&k) != 1 && k > 1 {
            continue;
        }
        let candidate = Complex::root_of_unity(j as i64, k, prec);
        if (&candidate - w).abs() < tol {
            return Some((k, j));
        }
    }
    None
}

fn libm_round(x: f64) -> f64 {
    let f = x as i64 as f64;
    let frac = x - f;
    if frac >= 0.5 {
        f + 1.0
    } else if frac <= -0.5 {
        f - 1.0
    } else {
        f
    }
}

/// Locates the poles of `f` on its circle of convergence and their principal
/// coefficients of maximal order.
///
/// `radius_hint` is an exact candidate for `R`; when `+-R` are exact roots of
/// the denominator the corresponding coefficients are also computed exactly.
pub fn principal_parts(
    f: &RationalFunctionT,
    radius_hint: Option<&BigRational>,
    correction: Option<Correction<'_>>,
    prec: u32,
) -> Result<MeromorphicModel> {
    let work = prec + 32;
    let num = f.numerator_poly();
    let den = f.denominator_poly();
    let decomposition = den.squarefree_decomposition();
    if decomposition.is_empty() {
        return Err(Error::InvalidInput("rational function has no poles".into()));
    }

    // (root, multiplicity, exact value if rational)
    let mut poles: Vec<(Complex, u32, Option<BigRational>)> = Vec::new();
    for (mult, factor) in &decomposition {
        let mut factor = factor.clone();
        let mut exact = Vec::new();
        if let Some(h) = radius_hint {
            for c in rational_roots_among(&factor, &[h.clone(), -h.clone()]) {
                let linear = QPoly::new(alloc::vec![-c.clone(), BigRational::one()]);
                factor = factor.div_rem(&linear).0;
                exact.push(c);
            }
        }
        for c in exact {
            poles.push((Complex::from_rational(&c, work), *mult, Some(c)));
        }
        for z in find_roots(&factor, work)? {
            poles.push((z, *mult, None));
        }
    }

    let moduli: Vec<Real> = poles.iter().map(|(z, _, _)| z.abs()).collect();
    let min = moduli.iter().min().cloned().expect("at least one pole");
    let on_circle = &min * &(Real::one(work) + Real::pow2(-(prec as i64) / 2, work));
    let clear = &min * &(Real::one(work) + Real::pow2(-(prec as i64) / 8, work));
    if moduli.iter().any(|m| *m > on_circle && *m < clear) {
        return Err(Error::Precision("poles of different moduli cannot be separated at this precision".into()));
    }
    let (radius, radius_exact) = match radius_hint {
        Some(h) if (Real::from_rational(h, work) - &min).abs() <= &on_circle - &min => {
            (Real::from_rational(h, work), Some(h.clone()))
        }
        Some(h) => {
            return Err(Error::InvalidInput(format!(
                "radius hint {h} does not match the smallest pole modulus {min:?}"
            )))
        }
        None => (min.clone(), None),
    };

    // classify circle poles by angle
    let mut circle: Vec<(Complex, u32, Option<BigRational>, u64, u64)> = Vec::new();
    for ((z, mult, exact), m) in poles.into_iter().zip(&moduli) {
        if *m > on_circle {
            continue;
        }
        let w = Complex::new(&z.re / m, &z.im / m);
        let (k, j) = root_of_unity_order(&w, work)
            .ok_or_else(|| Error::Unsupported("pole on the circle at an irrational angle".into()))?;
        circle.push((z, mult, exact, k, j));
    }
    let ell = circle.iter().fold(1u64, |acc, c| acc.lcm(&c.3));
    let b = circle.iter().map(|c| c.1).max().unwrap();

    let mut principal = BTreeMap::new();
    let mut principal_exact = BTreeMap::new();
    let b_fact = factorial(b);
    let deriv = nth_derivative(&den, b);
    for (z, mult, exact, k, j_angle) in circle {
        if mult != b {
            continue;
        }
        // z = R exp(2 pi i j_angle / k) = R xi^{j_angle ell / k};  u_j = R xi^{-j}
        let m = j_angle * (ell / k);
        let j = (ell - m % ell) % ell;
        let j = if j == 0 { ell } else { j };
        // p = N(u) b! / D^{(b)}(u)
        let (value, exact_value) = match &exact {
            Some(c) => {
                let v = num.eval(c) * BigRational::from_integer(b_fact.clone()) / deriv.eval(c);
                (Complex::from_rational(&v, work), Some(v))
            }
            None => {
                let n = eval_rational_poly(&num, &z);
                let d = eval_rational_poly(&deriv, &z);
                let v = (&n / &d).scale(&Real::from_int(b_fact.clone(), work));
                (v, None)
            }
        };
        let value = match correction {
            Some(h) => &value * &h(&z)?,
            None => value,
        };
        if correction.is_none() {
            if let Some(v) = exact_value {
                principal_exact.insert(j, v);
            }
        }
        principal.insert(j, value);
    }
    if principal.values().all(Complex::is_zero) {
        return Err(Error::InvalidInput("all principal coefficients vanish".into()));
    }
    Ok(MeromorphicModel {
        radius,
        radius_exact,
        pole_order: b,
        root_count: ell,
        principal,
        principal_exact,
        prec: work,
    })
}

fn real_part_checked(z: &Complex, scale: &Real, prec: u32) -> Result<Real> {
    let tol = scale * &Real::pow2(-(prec as i64) / 2, prec);
    if z.im.abs() > tol {
        return Err(Error::Inconsistent(format!("prediction has imaginary part {:?} beyond tolerance", z.im)));
    }
    Ok(z.re.clone())
}

/// Leading-order prediction for the coefficient `c_n`.
pub fn predict_coefficients(model: &MeromorphicModel, n: u64) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidInput("predictions start at n = 1".into()));
    }
    let prec = model.prec;
    let b = model.pole_order;
    let mut sum = Complex::zero(prec);
    let mut scale = Real::zero(prec);
    for (&j, p) in &model.principal {
        let u = model.pole(j);
        let term = &(&(-&u).powi(-(b as i64)) * p) * &model.xi_power((j * (n % model.root_count)) as i64);
        scale = &scale + &term.abs();
        sum = &sum + &term;
    }
    let factor = model.radius.powi(-(n as i64)) * Real::from_i64(n as i64, prec).powi(b as i64 - 1)
        / Real::from_int(factorial(b - 1), prec);
    let re = real_part_checked(&sum, &scale, prec)?;
    Ok(re * factor)
}

/// `C(X) ~ leading * base^n * n^{b-1}` along `n = e mod ell`.
///
/// For a series in `t = q^{-s}` the base is `q^a`, and with `X = q^n` the
/// estimate reads `(leading / (log q)^{b-1}) X^a (log X)^{b-1}`.
#[derive(Clone, Debug)]
pub struct AsymptoticEstimate {
    /// Growth per unit degree, `R^{-1}`.
    pub base: Real,
    /// `a` with `base = q^a`, when known.
    pub exponent: Option<BigRational>,
    pub log_order: u32,
    /// Coefficient of `base^n n^{b-1}`; free of logarithms.
    pub leading: Real,
    pub leading_exact: Option<BigRational>,
    /// `(ell, e)` with `1 <= e <= ell`.
    pub progression: (u64, u64),
}

impl AsymptoticEstimate {
    pub fn evaluate(&self, n: u64) -> Real {
        let prec = self.leading.precision();
        &self.leading * &self.base.powi(n as i64) * Real::from_i64(n as i64, prec).powi(self.log_order as i64 - 1)
    }

    /// `c` in `C(X) ~ c X^a (log X)^{b-1}` with `X = q^n`.
    pub fn constant_for_norm(&self, q: u64) -> Real {
        let prec = self.leading.precision();
        let log_q = Real::from_i64(q as i64, prec).ln();
        &self.leading / &log_q.powi(self.log_order as i64 - 1)
    }

    /// `c` in `C ~ c X (log X)^{b-1}` with `X = R^{-n}`.
    pub fn constant_for_radius(&self) -> Real {
        &self.leading / &self.base.ln().powi(self.log_order as i64 - 1)
    }

    pub fn in_progression(&self, n: u64) -> bool {
        let (ell, e) = self.progression;
        n % ell == e % ell
    }

    pub fn with_exponent(mut self, a: BigRational) -> Self {
        self.exponent = Some(a);
        self
    }
}

fn progression_class(n: u64, ell: u64) -> (u64, u64) {
    let e = n % ell;
    (ell, if e == 0 { ell } else { e })
}

/// Leading-order estimate for the partial sums `sum_{k<=m} c_k` along the
/// residue class of `m`.
pub fn predict_partial_sums(model: &MeromorphicModel, m: u64) -> Result<AsymptoticEstimate> {
    let prec = model.prec;
    let b = model.pole_order;
    let ell = model.effective_progression();
    let mut sum = Complex::zero(prec);
    let mut scale = Real::zero(prec);
    for (&j, p) in &model.principal {
        let u = model.pole(j);
        let one_minus = &Complex::one(prec) - &u;
        let term =
            &(&(&(-&u).powi(-(b as i64)) * p) * &model.xi_power((j * (m % model.root_count)) as i64)) / &one_minus;
        scale = &scale + &term.abs();
        sum = &sum + &term;
    }
    let fact = Real::from_int(factorial(b - 1), prec);
    let leading = real_part_checked(&sum, &scale, prec)? / &fact;

    // exact when every contributing pole is rational: u_j = +-R
    let leading_exact = match &model.radius_exact {
        Some(r) if model.principal_exact.len() == model.principal.len() => {
            let mut acc = BigRational::zero();
            for (&j, p) in &model.principal_exact {
                let sign = if 2 * j == model.root_count { -BigRational::one() } else { BigRational::one() };
                let u = r * &sign;
                let rot = if sign.is_negative() && m % 2 == 1 { -BigRational::one() } else { BigRational::one() };
                let neg_u_pow = pow_rational(&-u.clone(), -(b as i64));
                acc += neg_u_pow * p * rot / (BigRational::one() - u);
            }
            Some(acc / BigRational::from_integer(factorial(b - 1)))
        }
        _ => None,
    };
    Ok(AsymptoticEstimate {
        base: model.radius.recip(),
        exponent: None,
        log_order: b,
        leading,
        leading_exact,
        progression: progression_class(m, ell),
    })
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let v = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        v.recip()
    } else {
        v
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `|sum_{n<=m} C(n+l, l) t^{-n} - t^{-m} m^l / (l! (1-t))| / (|t|^{-m} m^l)`.
pub fn binomial_sum_check(l: u32, t: &Complex, m: u64, prec: u32) -> Real {
    let work = prec + 32;
    let inv = t.recip();
    let mut power = Complex::one(work);
    let mut sum = Complex::zero(work);
    for n in 0..=m {
        let c = Real::from_int(binomial(n + l as u64, l as u64), work);
        sum = &sum + &power.scale(&c);
        power = &power * &inv;
    }
    let t_pow = inv.powi(m as i64);
    let m_l = Real::from_i64(m as i64, work).powi(l as i64);
    let approx = &t_pow.scale(&(&m_l / &Real::from_int(factorial(l), work))) / &(&Complex::one(work) - t);
    let dev = (&sum - &approx).abs();
    let norm = t.abs().powi(-(m as i64)) * m_l;
    (dev / norm).with_precision(prec)
}

/// [`binomial_sum_check`] in exact arithmetic for rational `t` with `0 < |t| < 1`.
pub fn binomial_sum_check_exact(l: u32, t: &BigRational, m: u64) -> BigRational {
    let inv = t.recip();
    let mut power = BigRational::one();
    let mut sum = BigRational::zero();
    for n in 0..=m {
        sum += &power * BigRational::from_integer(binomial(n + l as u64, l as u64));
        power *= &inv;
    }
    let m_l = BigRational::from_integer(num_traits::pow(BigInt::from(m), l as usize));
    let t_pow = pow_rational(&inv, m as i64);
    let approx = &t_pow * &m_l / BigRational::from_integer(factorial(l)) / (BigRational::one() - t);
    (sum - approx).abs() / (pow_rational(&t.abs(), -(m as i64)) * m_l)
}

/// The closed-form constants for `p = 2` (any rank) and for rank one.
///
/// `p = 2`: `leading = e_r rho / ((1 - q^{-(r+1)}) Z_F(q^{-(r+1)}))` exactly, where
/// `rho = L_F(1/q) / (1 - 1/q)`, along even degrees.
///
/// `r = 1`: `leading = e_1 / ((p-2)! (1 - 1/q)) rho^{p-1} / p! prod_P (1 + (p-1)/N)(1 - 1/N)^{p-1}`,
/// with the product truncated at degree `degree_cutoff`. The returned
/// `error_bound` covers the omitted primes.
pub fn addendum_constants(
    model: &FieldModel,
    group: &GroupSpec,
    degree_cutoff: usize,
    prec: u32,
) -> Result<(AsymptoticEstimate, Real)> {
    let p = group.p();
    let r = group.r();
    if p != model.p() {
        return Err(Error::InvalidInput("group and field characteristic differ".into()));
    }
    let q = model.q();
    let qr = BigRational::from_integer(BigInt::from(q));
    let rho = model.zeta_residue();
    let a = abscissa(p, r);
    let base = q_pow_rational(q, &a, prec);
    if p == 2 {
        let x = pow_rational(&qr, -(r as i64 + 1));
        let leading = group.e(r) * &rho / ((BigRational::one() - &x) * model.zeta_at(&x));
        return Ok((
            AsymptoticEstimate {
                base,
                exponent: Some(a),
                log_order: 1,
                leading: Real::from_rational(&leading, prec),
                leading_exact: Some(leading),
                progression: (2, 2),
            },
            Real::zero(prec),
        ));
    }
    if r != 1 {
        return Err(Error::Unsupported(format!(
            "no closed form for p = {p}, r = {r}; use the generic partial-sum prediction"
        )));
    }
    let q_inv = qr.recip();
    let p_fact = factorial(p as u32);
    let prefactor = group.e(1) / (BigRational::one() - &q_inv) * num_traits::pow(rho, p as usize - 1)
        / BigRational::from_integer(factorial(p as u32 - 2) * p_fact);
    let work = prec + 64;
    let counts = model.prime_degree_counts(degree_cutoff)?;
    let mut product = Real::one(work);
    for d in 1..=degree_cutoff {
        let x = Real::from_int(model.norm(d as u64), work).recip();
        let one = Real::one(work);
        let factor = (&one + &(&x * &Real::from_i64(p as i64 - 1, work))) * (&one - &x).powi(p as i64 - 1);
        product = product * pow_big(&factor, &counts[d - 1]);
    }
    // |(1 + (p-1)x)(1-x)^{p-1} - 1| <= p 2^{p-1} x^2
    let s = Real::from_int(BigInt::from(p) << (p as usize - 1), work);
    let tail = euler_tail_log_bound(model, q, &s, &BigRational::from_integer((-2).into()), degree_cutoff, work)?;
    let leading = Real::from_rational(&prefactor, work) * &product;
    let bound = leading.abs() * (Real::from_i64(2, work) * tail + Real::pow2(-(prec as i64), work));
    Ok((
        AsymptoticEstimate {
            base,
            exponent: Some(a),
            log_order: p as u32 - 1,
            leading: leading.with_precision(prec),
            leading_exact: None,
            progression: (1, 1),
        },
        bound.with_precision(prec),
    ))
}

fn pow_big(x: &Real, e: &BigUint) -> Real {
    let mut result = Real::one(x.precision());
    for i in (0..e.bits()).rev() {
        result = result.sqr();
        if e.bit(i) {
            result = &result * x;
        }
    }
    result
}

/// Partial sum at `n` divided by the estimate.
pub fn empirical_ratio(series: &TruncatedSeries, estimate: &AsymptoticEstimate, n: u64) -> Result<Real> {
    if !estimate.in_progression(n) {
        return Err(Error::InvalidInput(format!("n = {n} is not in the progression {:?}", estimate.progression)));
    }
    if n as usize > series.order() {
        return Err(Error::InvalidInput(format!("series is only known to order {}", series.order())));
    }
    let prec = estimate.leading.precision();
    let sum: BigRational = series.coeffs()[..=n as usize].iter().sum();
    Ok(Real::from_rational(&sum, prec) / estimate.evaluate(n))
}

/// Builds a boxed correction `u -> scale * h(u)`.
pub fn scaled_correction<'a, F>(scale: BigRational, h: F) -> BoxedCorrection<'a>
where
    F: Fn(&Complex) -> Result<Complex> + 'a,
{
    Box::new(move |u| {
        let v = h(u)?;
        Ok(v.scale(&Real::from_rational(&scale, v.precision())))
    })
}

/// `u -> Psi_r(u)` for poles `u` on the circle `|t| = q^{-a}`.
pub fn psi_correction<'a>(
    model: &'a FieldModel,
    p: u64,
    r: u32,
    degree_cutoff: usize,
    prec: u32,
) -> impl Fn(&Complex) -> Result<Complex> + 'a {
    move |u: &Complex| {
        let m = u.abs();
        let rotation = Complex::new(&u.re / &m, &u.im / &m);
        Ok(crate::dirichlet::psi_at(model, p, r, &rotation, degree_cutoff, prec)?.value)
    }
}

/// The generic path: principal parts of `Lambda_r` on the circle of
/// convergence, each weighted by `e_r Psi_r` at the pole, fed to
/// [`predict_partial_sums`] along the residue class of `m`.
pub fn tauberian_constant(
    model: &FieldModel,
    group: &GroupSpec,
    degree_cutoff: usize,
    m: u64,
    prec: u32,
) -> Result<AsymptoticEstimate> {
    let (p, r) = (group.p(), group.r());
    if p != model.p() {
        return Err(Error::InvalidInput("group and field characteristic differ".into()));
    }
    let lambda = crate::dirichlet::lambda_rational(model, p, r)?;
    let psi = psi_correction(model, p, r, degree_cutoff, prec);
    let correction = scaled_correction(group.e(r).clone(), psi);
    let poles = principal_parts(&lambda, None, Some(&*correction), prec)?;
    Ok(predict_partial_sums(&poles, m)?.with_exponent(abscissa(p, r)))
}
