//! The conductor Dirichlet series `Phi(F, C_p^r; s)` as a power series in
//! `t = q^{-s}`, its Euler-product pieces, the zeta factor `Lambda_r`, the
//! holomorphic factor `Psi_r`, and the derived pole and exponent data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{exceptional_modules, tilde_count, wild_exponent, GroupSpec};
use crate::error::{Error, Result};
use crate::field::{pow_signed, FieldModel};
use crate::poly::QPoly;
use crate::real::{Complex, Real};
use crate::series::TruncatedSeries;

/// Maps the Dirichlet term `N^{u - v s}` with `N = q^d` to the power-series
/// term `q^{d u} t^{d v}`, returned as `(coefficient, power of t)`.
pub fn s_term(q: u64, degree: u64, u: i64, v: u64) -> (BigRational, usize) {
    let qd = BigRational::from_integer(num_traits::pow(BigInt::from(q), degree as usize));
    (pow_signed(&qd, u), (degree * v) as usize)
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A rational function in `t` with integer coefficients, reduced: numerator
/// and denominator are coprime over `Q` and the pair has no common content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionT {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalFunctionT {
    pub fn new(numerator: &QPoly, denominator: &QPoly) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::InvalidInput("denominator must have a nonzero constant term".into()));
        }
        let g = numerator.gcd(denominator);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (numerator.div_rem(&g).0, denominator.div_rem(&g).0)
        } else {
            (numerator.clone(), denominator.clone())
        };
        let (den_ints, den_factor) = den.primitive_part();
        // num/den = num / (den_factor * den_ints)
        let scaled = num.scale(&den_factor.recip());
        let (num_ints, num_factor) = scaled.primitive_part();
        let numerator = num_ints.into_iter().map(|c| c * num_factor.numer()).collect();
        let denominator = den_ints.into_iter().map(|c| c * num_factor.denom()).collect();
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    pub fn numerator_poly(&self) -> QPoly {
        QPoly::from_integers(self.numerator.iter().cloned())
    }

    pub fn denominator_poly(&self) -> QPoly {
        QPoly::from_integers(self.denominator.iter().cloned())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            &self.numerator_poly().mul(&other.numerator_poly()),
            &self.denominator_poly().mul(&other.denominator_poly()),
        )
    }

    /// Taylor expansion at `t = 0`.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let num = TruncatedSeries::from_integers(self.numerator.iter().cloned(), order);
        let den = TruncatedSeries::from_integers(self.denominator.iter().cloned(), order);
        num.mul(&den.inv().expect("nonzero constant term"))
    }
}

/// Multiplies `prod_d factor(d)^{b_d}` over prime degrees `d <= order`.
fn euler_product<F>(model: &FieldModel, order: usize, mut factor: F) -> Result<TruncatedSeries>
where
    F: FnMut(u64) -> TruncatedSeries,
{
    let mut acc = TruncatedSeries::one(order);
    if order == 0 {
        return Ok(acc);
    }
    let counts = model.prime_degree_counts(order)?;
    let one = TruncatedSeries::one(order);
    for d in 1..=order as u64 {
        let b = &counts[d as usize - 1];
        if b.is_zero() {
            continue;
        }
        let f = factor(d);
        if f == one {
            continue;
        }
        acc = acc.mul(&f.pow(b));
    }
    Ok(acc)
}

/// Local factor `1 + (N^i - 1) sum_{p | n} N^{i r_n - (n+1) s}` of `Phi_i`
/// at a prime of degree `d`.
fn phi_local_factor(q: u64, p: u64, i: u32, d: u64, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    let (norm_i, _) = s_term(q, d, i as i64, 0);
    let lead = norm_i - BigRational::one();
    let mut n = 1u64;
    while d * (n + 1) <= order as u64 {
        if !n.is_multiple_of(p) {
            let (c, pow) = s_term(q, d, (i as u64 * wild_exponent(n, p)) as i64, n + 1);
            coeffs[pow] += &lead * c;
        }
        n += 1;
    }
    TruncatedSeries::from_coeffs(coeffs, order)
}

fn euler_phi(model: &FieldModel, p: u64, i: u32, order: usize) -> Result<TruncatedSeries> {
    let q = model.q();
    euler_product(model, order, |d| phi_local_factor(q, p, i, d, order))
}

fn check_group(model: &FieldModel, group: &GroupSpec) -> Result<()> {
    if group.p() != model.p() {
        return Err(Error::InvalidInput(format!(
            "group exponent {} differs from the characteristic {}",
            group.p(),
            model.p()
        )));
    }
    Ok(())
}

/// The Euler product `Phi_i(s)`.
pub fn phi_i_series(model: &FieldModel, group: &GroupSpec, i: u32, order: usize) -> Result<TruncatedSeries> {
    check_group(model, group)?;
    if i == 0 || i > group.r() {
        return Err(Error::InvalidInput(format!("index {i} outside 1..={}", group.r())));
    }
    euler_phi(model, group.p(), i, order)
}

/// `prod_{deg P > 2g-2} (1 - N(P)^{-2s})`.
fn restricted_square_product(model: &FieldModel, order: usize) -> Result<TruncatedSeries> {
    let inv_zeta2 = model.zeta_series(order).inv()?.subst_monomial(&BigRational::one(), 2);
    let bound = model.genus() as i64 * 2 - 2;
    if bound <= 0 {
        return Ok(inv_zeta2);
    }
    let small = bound as usize;
    let counts = model.prime_degree_counts(small)?;
    let mut acc = inv_zeta2;
    for d in 1..=small {
        let mut f = TruncatedSeries::one(order);
        if 2 * d <= order {
            f = &f - &TruncatedSeries::monomial(BigRational::one(), 2 * d, order);
        }
        let e = BigInt::from(counts[d - 1].clone());
        acc = acc.mul(&f.pow_signed(&-e)?);
    }
    Ok(acc)
}

/// The rational error term `Upsilon_r = Phi - sum_i e_i Phi_i`.
///
/// Equals `e_0 + sum_{m_0 in M} c~_{m_0} t^{deg m_0} prod_{deg P > 2g-2} (1 - t^{2 deg P})`:
/// the constant term is `c_1 - sum_{i>=1} e_i` and the trivial `m_0` contributes
/// only through modules `m_1^2` with `m_1` nontrivial.
pub fn upsilon_series(model: &FieldModel, group: &GroupSpec, order: usize) -> Result<TruncatedSeries> {
    check_group(model, group)?;
    let product = restricted_square_product(model, order)?;
    let mut acc = TruncatedSeries::constant(group.e(0).clone(), order);
    for m0 in exceptional_modules(model, group)? {
        let deg = m0.degree() as usize;
        if deg > order {
            continue;
        }
        let tilde = tilde_count(model, group, &m0)?;
        if tilde.is_zero() {
            continue;
        }
        let shifted = product.mul(&TruncatedSeries::monomial(tilde, deg, order));
        acc = &acc + &shifted;
    }
    Ok(acc)
}

/// The conductor series `Phi(F, C_p^r; s) = sum_n c_n t^n`.
pub fn phi_series(model: &FieldModel, group: &GroupSpec, order: usize) -> Result<TruncatedSeries> {
    let mut acc = upsilon_series(model, group, order)?;
    for i in 1..=group.r() {
        let e = group.e(i);
        if e.is_zero() {
            continue;
        }
        acc = &acc + &phi_i_series(model, group, i, order)?.scale(e);
    }
    for (n, c) in acc.coeffs().iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Inconsistent(format!("coefficient of t^{n} is {c}")));
        }
    }
    Ok(acc)
}

/// `Lambda_r = prod_{l=2}^p Z_F(q^{(l-1) r} t^l)` as an exact rational function.
pub fn lambda_rational(model: &FieldModel, p: u64, r: u32) -> Result<RationalFunctionT> {
    let q = BigInt::from(model.q());
    let l_poly = model.l_polynomial();
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for l in 2..=p {
        let c = num_traits::pow(q.clone(), ((l - 1) * r as u64) as usize);
        num = num.mul(&l_poly.subst_monomial(&rat(c.clone()), l as usize));
        den = den.mul(&QPoly::binomial(c.clone(), l as usize)).mul(&QPoly::binomial(&c * &q, l as usize));
    }
    RationalFunctionT::new(&num, &den)
}

/// Monomials `(coeff, u, v)` of the local factor of `Psi_r` written as
/// `P(X, T) = (1 + sum_{l=0}^{p-2} X^{l r} T^{l+1}) prod_{l=0}^{p-2} (1 - X^{l r} T^{l+1})`
/// with `X = N`, `T = N^{-s}`. Zero coefficients are dropped.
pub fn psi_local_polynomial(p: u64, r: u32) -> Vec<(BigInt, u64, u64)> {
    let mut first: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
    first.insert((0, 0), BigInt::one());
    for l in 0..p - 1 {
        *first.entry((l * r as u64, l + 1)).or_insert_with(BigInt::zero) += 1;
    }
    let mut poly = first;
    for l in 0..p - 1 {
        let mut next: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
        for ((u, v), c) in &poly {
            *next.entry((*u, *v)).or_insert_with(BigInt::zero) += c;
            *next.entry((u + l * r as u64, v + l + 1)).or_insert_with(BigInt::zero) -= c;
        }
        poly = next;
    }
    poly.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, v), c)| (c, u, v)).collect()
}

/// The holomorphic factor `Psi_r` as an Euler product.
pub fn psi_series(model: &FieldModel, p: u64, r: u32, order: usize) -> Result<TruncatedSeries> {
    let q = model.q();
    let local = psi_local_polynomial(p, r);
    euler_product(model, order, |d| {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (c, u, v) in &local {
            let (x, pow) = s_term(q, d, *u as i64, *v);
            if pow <= order {
                coeffs[pow] += x * rat(c.clone());
            }
        }
        TruncatedSeries::from_coeffs(coeffs, order)
    })
}

/// Compares the defining sum of the degree-`d` Euler factor of `Phi_r` with
/// `(1 - N^{(p-1) r - p s})^{-1} (1 + sum_{l=0}^{p-2} N^{l r - (l+1) s}) (1 - N^{-s})`
/// as series to `order`.
pub fn euler_factor_closed_form_check(q: u64, d: u64, p: u64, r: u32, order: usize) -> bool {
    let direct = phi_local_factor(q, p, r, d, order);
    let (c, pow) = s_term(q, d, ((p - 1) * r as u64) as i64, p);
    let mut first = TruncatedSeries::one(order);
    first = &first - &TruncatedSeries::monomial(c, pow, order);
    let Ok(first) = first.inv() else {
        return false;
    };
    let mut middle = TruncatedSeries::one(order);
    for l in 0..p - 1 {
        let (c, pow) = s_term(q, d, (l * r as u64) as i64, l + 1);
        middle = &middle + &TruncatedSeries::monomial(c, pow, order);
    }
    let (c, pow) = s_term(q, d, 0, 1);
    let last = &TruncatedSeries::one(order) - &TruncatedSeries::monomial(c, pow, order);
    first.mul(&middle).mul(&last) == direct
}

/// The abscissa `a = (1 + (p-1) r) / p`.
pub fn abscissa(p: u64, r: u32) -> BigRational {
    BigRational::new(BigInt::from(1 + (p - 1) * r as u64), BigInt::from(p))
}

/// `q^e` for a rational exponent.
pub fn q_pow_rational(q: u64, e: &BigRational, prec: u32) -> Real {
    let num = e.numer().to_i64().expect("exponent numerator fits in i64");
    let den = e.denom().to_u32().expect("exponent denominator fits in u32");
    Real::from_i64(q as i64, prec).powi(num).nth_root(den)
}

/// `R = q^{-a}`, the radius of convergence in `t`.
pub fn radius(q: u64, p: u64, r: u32, prec: u32) -> Real {
    q_pow_rational(q, &-abscissa(p, r), prec)
}

/// A partial Euler product evaluated at one point together with a bound on
/// the distance to the full product.
#[derive(Clone, Debug)]
pub struct PsiValue<T> {
    pub value: T,
    pub error_bound: Real,
}

/// `Psi_r` at `t = R * rotation` (with `|rotation| = 1`) from the primes of
/// degree at most `degree_cutoff`, with a rigorous bound for the omitted tail.
pub fn psi_at(
    model: &FieldModel,
    p: u64,
    r: u32,
    rotation: &Complex,
    degree_cutoff: usize,
    prec: u32,
) -> Result<PsiValue<Complex>> {
    if degree_cutoff == 0 {
        return Err(Error::InvalidInput("degree cutoff must be positive".into()));
    }
    let work = prec + 64;
    let q = model.q();
    let a = abscissa(p, r);
    let local = psi_local_polynomial(p, r);
    let point = rotation.scale(&radius(q, p, r, work));

    // tail: |P(X, T) - 1| <= S X^kappa with kappa = max (u - a v)
    let nonconstant: Vec<_> = local.iter().filter(|(_, u, v)| *u != 0 || *v != 0).collect();
    let kappa = nonconstant.iter().map(|(_, u, v)| rat(*u) - &a * rat(*v)).max().unwrap_or_else(|| rat(-2));
    let s_sum: BigInt = nonconstant.iter().map(|(c, _, _)| c.abs()).sum();
    let tail = euler_tail_log_bound(model, q, &Real::from_int(s_sum, work), &kappa, degree_cutoff, work)?;

    let counts = model.prime_degree_counts(degree_cutoff)?;
    let mut value = Complex::one(work);
    let mut t_pow = Complex::one(work);
    for d in 1..=degree_cutoff as u64 {
        t_pow = &t_pow * &point;
        let x = Real::from_int(model.norm(d), work);
        let mut factor = Complex::zero(work);
        for (c, u, v) in &local {
            let term = t_pow.powi(*v as i64).scale(&(x.powi(*u as i64) * Real::from_int(c.clone(), work)));
            factor = &factor + &term;
        }
        value = &value * &factor.pow_big(&counts[d as usize - 1]);
    }
    let magnitude = value.abs();
    // e^x - 1 <= 2x for 0 <= x <= 1, plus a rounding allowance
    let error_bound = &magnitude * &(Real::from_i64(2, work) * &tail + Real::pow2(-(prec as i64), work));
    Ok(PsiValue {
        value: Complex::new(value.re.with_precision(prec), value.im.with_precision(prec)),
        error_bound: error_bound.with_precision(prec),
    })
}

/// Bound on `|sum_{deg P > D} log f_P|` for local factors with
/// `|f_P - 1| <= s N(P)^kappa`, using `b_d <= (2 + 2g) q^d / d`.
pub(crate) fn euler_tail_log_bound(
    model: &FieldModel,
    q: u64,
    s: &Real,
    kappa: &BigRational,
    degree_cutoff: usize,
    work: u32,
) -> Result<Real> {
    if *kappa >= rat(-1) {
        return Err(Error::Precision(format!("local factors decay like N^{kappa}; product does not converge")));
    }
    let d1 = degree_cutoff as i64 + 1;
    let first_dev = s * &q_pow_rational(q, &(kappa * rat(d1)), work);
    if first_dev > Real::from_f64(0.5, work) {
        return Err(Error::Precision(format!(
            "degree cutoff {degree_cutoff} too small for the logarithmic tail bound"
        )));
    }
    // |log(1 + z)| <= 2|z| for |z| <= 1/2, then a geometric series in q^{1 + kappa}
    let growth = q_pow_rational(q, &(rat(1) + kappa), work);
    let places = Real::from_i64(2 + 2 * model.genus() as i64, work);
    let tail = Real::from_i64(2, work) * s * places / Real::from_i64(d1, work)
        * q_pow_rational(q, &((rat(1) + kappa) * rat(d1)), work)
        / (Real::one(work) - growth);
    if tail > Real::one(work) {
        return Err(Error::Precision("tail bound exceeds one".into()));
    }
    Ok(tail)
}

/// `Psi_r(a)` at the real abscissa.
pub fn psi_at_abscissa(model: &FieldModel, p: u64, r: u32, degree_cutoff: usize, prec: u32) -> Result<PsiValue<Real>> {
    let v = psi_at(model, p, r, &Complex::one(prec), degree_cutoff, prec)?;
    Ok(PsiValue { value: v.value.re, error_bound: v.error_bound })
}

/// Location and order data of the poles of `Lambda_r` on its circle of convergence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub p: u64,
    pub r: u32,
    /// `a = (1 + (p-1) r) / p`; the radius in `t` is `q^{-a}`.
    pub abscissa: BigRational,
    pub log_order: u32,
    pub progression: u64,
    /// `(j / progression, order)` for every angle `2 pi j / progression` carrying a pole.
    pub pole_orders: Vec<(BigRational, u32)>,
    /// Angles (as fractions of a full turn) of the poles of maximal order.
    pub max_order_angles: Vec<BigRational>,
}

impl PoleReport {
    pub fn radius(&self, q: u64, prec: u32) -> Real {
        q_pow_rational(q, &-&self.abscissa, prec)
    }
}

pub fn pole_analysis(p: u64, r: u32) -> PoleReport {
    let (progression, pole_orders): (u64, Vec<(BigRational, u32)>) = if r == 1 {
        let ell = (2..=p).fold(1u64, |acc, l| acc.lcm(&l));
        let orders = (0..ell)
            .filter_map(|j| {
                let k = (2..=p).filter(|l| (l * j) % ell == 0).count() as u32;
                (k > 0).then(|| (BigRational::new(BigInt::from(j), BigInt::from(ell)), k))
            })
            .collect();
        (ell, orders)
    } else {
        let orders = (0..p).map(|j| (BigRational::new(BigInt::from(j), BigInt::from(p)), 1)).collect();
        (p, orders)
    };
    let log_order = pole_orders.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let max_order_angles = pole_orders.iter().filter(|(_, k)| *k == log_order).map(|(a, _)| a.clone()).collect();
    PoleReport { p, r, abscissa: abscissa(p, r), log_order, progression, pole_orders, max_order_angles }
}

/// Partial sums `C(F, G; q^n) = sum_{k<=n} c_k` for `n = 0..=up_to_degree`.
pub fn counting_function(model: &FieldModel, group: &GroupSpec, up_to_degree: usize) -> Result<Vec<BigUint>> {
    let series = phi_series(model, group, up_to_degree)?;
    Ok(series
        .partial_sums()
        .into_iter()
        .map(|s| s.to_integer().to_biguint().expect("nonnegative coefficients"))
        .collect())
}

/// Exponents attached to discriminant counting for `C_p^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub p: u64,
    pub r: u32,
    /// Conductor abscissa `(1 + (p-1) r) / p`.
    pub conductor_abscissa: BigRational,
    /// Lower-bound discriminant exponent `(1 + (p-1) r) / (p (p^r - 1))`.
    pub lower: BigRational,
    /// Upper-bound discriminant exponent `(1 + (p-1) r) / (p (p^r - p^{r-1}))`.
    pub upper: BigRational,
    /// Malle's `a(G) = p / (p^r (p - 1))`.
    pub malle: BigRational,
    /// `((r-1)(p-1)^2 - p) p^{r-1} + p`, a positive multiple of `lower - malle`.
    pub comparison_numerator: BigInt,
    /// Sign of `lower - malle`.
    pub comparison: Ordering,
}

pub fn exponent_report(p: u64, r: u32) -> ExponentReport {
    let pb = BigInt::from(p);
    let pr = num_traits::pow(pb.clone(), r as usize);
    let pr1 = num_traits::pow(pb.clone(), r as usize - 1);
    let top = BigInt::from(1 + (p - 1) * r as u64);
    let lower = BigRational::new(top.clone(), &pb * (&pr - 1));
    let upper = BigRational::new(top, &pb * (&pr - &pr1));
    let malle = BigRational::new(pb.clone(), &pr * (&pb - 1));
    let r1 = BigInt::from(r as i64 - 1);
    let pm1 = &pb - 1;
    let comparison_numerator = (r1 * &pm1 * &pm1 - &pb) * &pr1 + &pb;
    let comparison = lower.cmp(&malle);
    ExponentReport { p, r, conductor_abscissa: abscissa(p, r), lower, upper, malle, comparison_numerator, comparison }
}

/// Discriminant counts: exact for `r = 1` (the discriminant is `f^{p-1}`),
/// exponent bounds only for `r >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantView {
    pub exponents: ExponentReport,
    /// `(n, Z(F, G; q^n))` for `n = 0..=up_to_degree` when `r = 1`.
    pub table: Option<Vec<(u64, BigUint)>>,
}

pub fn discriminant_view(model: &FieldModel, group: &GroupSpec, up_to_degree: usize) -> Result<DiscriminantView> {
    check_group(model, group)?;
    let p = group.p();
    let exponents = exponent_report(p, group.r());
    let table = if group.r() == 1 {
        let k_max = up_to_degree / (p as usize - 1);
        let c = counting_function(model, group, k_max)?;
        Some((0..=up_to_degree).map(|n| (n as u64, c[n / (p as usize - 1)].clone())).collect())
    } else {
        None
    };
    Ok(DiscriminantView { exponents, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::subgroup_count_poly;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.to_integers().unwrap().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn rational(p: u64, q: u64) -> FieldModel {
        FieldModel::rational(p, q).unwrap()
    }

    #[test]
    fn phi_one_over_f2() {
        let f = rational(2, 2);
        let g = subgroup_count_poly(2, 1).unwrap();
        assert_eq!(ints(&phi_i_series(&f, &g, 1, 6).unwrap()), vec![1, 0, 3, 0, 12, 0, 48]);
        assert_eq!(ints(&phi_series(&f, &g, 6).unwrap()), vec![1, 0, 6, 0, 24, 0, 96]);
        assert_eq!(ints(&upsilon_series(&f, &g, 6).unwrap()), vec![-1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn upsilon_constants() {
        let f = rational(3, 3);
        let g = subgroup_count_poly(3, 1).unwrap();
        let u = upsilon_series(&f, &g, 5).unwrap();
        assert_eq!(u, TruncatedSeries::constant(BigRational::new((-1).into(), 2.into()), 5));
        assert_eq!(ints(&phi_series(&f, &g, 0).unwrap()), vec![1]);
    }

    #[test]
    fn rank_two_has_no_unramified_part() {
        let f = rational(2, 2);
        let g = subgroup_count_poly(2, 2).unwrap();
        let s = phi_series(&f, &g, 8).unwrap();
        assert!(s.coeff(0).is_zero());
        assert!(s.coeff(1).is_zero());
    }

    #[test]
    fn lambda_for_p2() {
        let f = rational(2, 2);
        let l = lambda_rational(&f, 2, 1).unwrap();
        // 1 / ((1 - 2t^2)(1 - 4t^2)) = 1 / (1 - 6t^2 + 8t^4)
        assert_eq!(l.numerator(), &[BigInt::one()]);
        let den: Vec<i64> = l.denominator().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(den, vec![1, 0, -6, 0, 8]);
    }

    #[test]
    fn psi_for_p2_is_inverse_zeta_at_2s() {
        for q in [2u64, 4] {
            let f = rational(2, q);
            for r in 1..=3 {
                let psi = psi_series(&f, 2, r, 10).unwrap();
                let inv = f.zeta_series(10).inv().unwrap().subst_monomial(&BigRational::one(), 2);
                assert_eq!(psi, inv);
            }
        }
    }

    #[test]
    fn local_polynomial_for_r1_p3() {
        // (1 + T + X T^2)(1 - T)(1 - X T^2)
        let got = psi_local_polynomial(3, 1);
        let want: Vec<(BigInt, u64, u64)> = [(1, 0, 0), (-1, 0, 2), (-1, 1, 3), (1, 1, 4), (-1, 2, 4), (1, 2, 5)]
            .into_iter()
            .map(|(c, u, v)| (BigInt::from(c), u, v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn closed_form_examples() {
        assert!(euler_factor_closed_form_check(2, 1, 2, 1, 10));
        assert!(euler_factor_closed_form_check(3, 2, 3, 2, 12));
        assert!(euler_factor_closed_form_check(5, 1, 5, 1, 15));
    }

    #[test]
    fn pole_reports() {
        let r = pole_analysis(2, 1);
        assert_eq!((r.abscissa.clone(), r.log_order, r.progression), (rat(1), 1, 2));
        let r = pole_analysis(3, 1);
        assert_eq!((r.abscissa.clone(), r.log_order, r.progression), (rat(1), 2, 6));
        assert_eq!(r.max_order_angles, vec![rat(0)]);
        let r = pole_analysis(2, 3);
        assert_eq!((r.abscissa.clone(), r.log_order, r.progression), (rat(2), 1, 2));
    }

    #[test]
    fn psi_value_p2() {
        let f = rational(2, 2);
        let v = psi_at_abscissa(&f, 2, 1, 30, 128).unwrap();
        let exact = Real::from_f64(0.375, 128);
        assert!((&v.value - &exact).abs() <= v.error_bound);
        assert!(v.error_bound.to_f64() < 1e-9);
        let far = psi_at_abscissa(&f, 2, 1, 60, 128).unwrap();
        assert!((&far.value - &exact).abs() <= far.error_bound);
        assert!(far.error_bound < v.error_bound);
    }

    #[test]
    fn counting_and_discriminants() {
        let f = rational(2, 2);
        let g = subgroup_count_poly(2, 1).unwrap();
        let c = counting_function(&f, &g, 10).unwrap();
        for n in 0..=5usize {
            assert_eq!(c[2 * n], BigUint::from(2u64 * 4u64.pow(n as u32) - 1));
        }
        let view = discriminant_view(&f, &g, 10).unwrap();
        let table = view.table.unwrap();
        assert!(table.iter().all(|(n, z)| *z == c[*n as usize]));
        let e = exponent_report(3, 2);
        assert_eq!(e.lower, BigRational::new(5.into(), 24.into()));
        assert_eq!(e.upper, BigRational::new(5.into(), 18.into()));
    }
}
