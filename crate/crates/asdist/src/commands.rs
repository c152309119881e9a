//! Subcommand implementations.

use std::cmp::Ordering;

use asdist_core::counting::{conductor_count, subgroup_count_poly, DivisorModule, GroupSpec, Place};
use asdist_core::dirichlet::{counting_function, discriminant_view, phi_series, pole_analysis};
use asdist_core::oracle::{irreducibles_up_to, oracle_count, GFPoly, GaloisField};
use asdist_core::tauberian::{addendum_constants, tauberian_constant, AsymptoticEstimate};
use asdist_core::{Error, FieldModel, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cli::{Command, Common, Numerics};
use crate::report::{Cell, Report};

/// Digits after the decimal point for high-precision reals.
const DIGITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad flags, model or module; exit code 2.
    Invalid(String),
    /// A computed quantity contradicts an invariant; exit code 3.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::Precision(_) | Error::NotInvertible => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    /// Set by `compare` when the two sides disagree.
    pub mismatch: bool,
}

fn setup(
    common: &Common,
    command: &'static str,
    columns: Vec<&'static str>,
) -> Result<(FieldModel, GroupSpec, Report), Failure> {
    let spec = common.model.spec().map_err(Failure::Invalid)?;
    let model = spec.build().map_err(Failure::Invalid)?;
    let group = subgroup_count_poly(model.p(), common.r)?;
    let mut report = Report::new(command, columns);
    report.model = Some(model.clone());
    report.group = Some((group.p(), group.r()));
    Ok((model, group, report))
}

fn decimal(x: &Real) -> Cell {
    Cell::Decimal(x.to_decimal(DIGITS))
}

fn scientific(x: &Real) -> Cell {
    Cell::Decimal(format!("{:.3e}", x.to_f64()))
}

fn rational_cell(x: &BigRational) -> Cell {
    if x.is_integer() {
        Cell::int(x)
    } else {
        Cell::text(x)
    }
}

pub fn execute(command: &Command) -> Result<Outcome, Failure> {
    let report = match command {
        Command::Series { common, order } => series(common, *order)?,
        Command::Count { common, order } => count(common, *order)?,
        Command::Conductor { common, module } => conductor(common, module)?,
        Command::Poles { common, numerics } => poles(common, numerics)?,
        Command::Constant { common, numerics } => constant(common, numerics)?,
        Command::Oracle { common, bound, budget } => oracle(common, *bound, *budget)?,
        Command::Compare { common, bound, budget } => return compare(common, *bound, *budget),
        Command::Disc { common, order } => disc(common, *order)?,
    };
    Ok(Outcome { report, mismatch: false })
}

fn series(common: &Common, order: usize) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "series", vec!["n", "value"])?;
    let phi = phi_series(&model, &group, order)?;
    let coeffs = phi.to_integers().ok_or_else(|| Failure::Internal("series has a non-integral coefficient".into()))?;
    for (n, c) in coeffs.iter().enumerate() {
        report.push_row(vec![Cell::int(n), Cell::int(c)]);
    }
    report.order = Some(order as u64);
    Ok(report)
}

fn count(common: &Common, order: usize) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "count", vec!["n", "value"])?;
    for (n, c) in counting_function(&model, &group, order)?.iter().enumerate() {
        report.push_row(vec![Cell::int(n), Cell::int(c)]);
    }
    report.order = Some(order as u64);
    Ok(report)
}

fn is_irreducible(field: &GaloisField, poly: &GFPoly) -> bool {
    let degree = poly.degree().unwrap_or(0);
    degree >= 1 && irreducibles_up_to(field, degree / 2).iter().all(|g| !poly.rem(g, field).is_zero())
}

/// Parses `P<deg>.<index>^k`, `inf^k` and `(c0,c1,...,1)^k` factors joined by `*`.
pub fn parse_module(text: &str, model: &FieldModel) -> Result<DivisorModule, String> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(DivisorModule::trivial());
    }
    let mut module = DivisorModule::trivial();
    let (mut abstract_seen, mut concrete_seen) = (false, false);
    for token in text.split('*') {
        let token = token.trim();
        let (place_text, mult) = match token.rsplit_once('^') {
            Some((pl, k)) => {
                (pl.trim(), k.trim().parse::<u32>().map_err(|_| format!("bad multiplicity in `{token}`"))?)
            }
            _ => (token, 1),
        };
        if mult == 0 {
            return Err(format!("zero multiplicity in `{token}`"));
        }
        let place = if place_text == "inf" {
            concrete_seen = true;
            Place::Infinity
        } else if let Some(rest) = place_text.strip_prefix('P') {
            abstract_seen = true;
            let (d, i) =
                rest.split_once('.').ok_or_else(|| format!("expected P<degree>.<index>, got `{place_text}`"))?;
            let degree: u32 = d.parse().map_err(|_| format!("bad degree in `{place_text}`"))?;
            let index: u64 = i.parse().map_err(|_| format!("bad index in `{place_text}`"))?;
            if degree == 0 {
                return Err("places have positive degree".into());
            }
            let counts = model.prime_degree_counts(degree as usize).map_err(|e| e.to_string())?;
            let available = &counts[degree as usize - 1];
            if available.to_u64().is_some_and(|b| index >= b) {
                return Err(format!("only {available} places of degree {degree}; index {index} is out of range"));
            }
            Place::Abstract { degree, index }
        } else if let Some(inner) = place_text.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            concrete_seen = true;
            let coeffs: Vec<u32> = inner
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| format!("bad coefficient in `{place_text}`")))
                .collect::<Result<_, _>>()?;
            let field = GaloisField::new(model.q()).map_err(|e| e.to_string())?;
            if coeffs.iter().any(|&c| c >= field.q()) || coeffs.last() != Some(&1) {
                return Err(format!("`{place_text}` is not a monic polynomial over F_{}", model.q()));
            }
            if !is_irreducible(&field, &GFPoly::new(coeffs.clone())) {
                return Err(format!("`{place_text}` is not irreducible"));
            }
            Place::Finite(coeffs)
        } else {
            return Err(format!("unrecognized place `{place_text}`"));
        };
        if module.multiplicity(&place) > 0 {
            return Err(format!("place `{place_text}` appears twice"));
        }
        module.raise(place, mult);
    }
    if concrete_seen && model.genus() > 0 {
        return Err("explicit polynomials and `inf` name places of F_q(x) only".into());
    }
    if abstract_seen && concrete_seen {
        return Err("mixing abstract and explicit places is ambiguous".into());
    }
    Ok(module)
}

fn conductor(common: &Common, module_text: &str) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "conductor", vec!["module", "degree", "count"])?;
    let module = parse_module(module_text, &model).map_err(Failure::Invalid)?;
    let count = conductor_count(&model, &group, &module)?;
    report.push_row(vec![Cell::text(&module), Cell::int(module.degree()), Cell::int(count)]);
    Ok(report)
}

fn poles(common: &Common, numerics: &Numerics) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "poles", vec!["angle", "order"])?;
    let analysis = pole_analysis(group.p(), group.r());
    report.note("abscissa", rational_cell(&analysis.abscissa));
    report.note("radius", decimal(&analysis.radius(model.q(), numerics.precision)));
    report.note("pole_order", Cell::int(analysis.log_order));
    report.note("progression", Cell::int(analysis.progression));
    for (angle, order) in &analysis.pole_orders {
        report.push_row(vec![rational_cell(angle), Cell::int(order)]);
    }
    report.precision_bits = Some(numerics.precision);
    Ok(report)
}

fn estimate_row(path: &str, est: &AsymptoticEstimate, q: u64) -> Vec<Cell> {
    let leading = match &est.leading_exact {
        Some(exact) => rational_cell(exact),
        None => decimal(&est.leading),
    };
    vec![
        Cell::text(path),
        leading,
        decimal(&est.constant_for_norm(q)),
        Cell::text(format!("{} mod {}", est.progression.1 % est.progression.0, est.progression.0)),
    ]
}

fn constant(common: &Common, numerics: &Numerics) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "constant", vec!["path", "leading", "constant", "degrees"])?;
    let prec = numerics.precision;
    let analysis = pole_analysis(group.p(), group.r());
    let closed = match addendum_constants(&model, &group, numerics.cutoff, prec) {
        Ok(c) => Some(c),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let generic = tauberian_constant(&model, &group, numerics.cutoff, analysis.progression, prec)?;
    report.note("abscissa", rational_cell(&analysis.abscissa));
    report.note("log_power", Cell::int(generic.log_order - 1));
    if let Some((est, bound)) = &closed {
        report.push_row(estimate_row("closed_form", est, model.q()));
        let delta = ((&est.leading - &generic.leading) / &est.leading).abs();
        report.note("closed_form_error_bound", scientific(bound));
        report.note("relative_delta", scientific(&delta));
    }
    report.push_row(estimate_row("tauberian", &generic, model.q()));
    report.precision_bits = Some(prec);
    Ok(report)
}

fn require_rational(model: &FieldModel) -> Result<(), Failure> {
    if model.genus() != 0 {
        return Err(Failure::Invalid("the brute-force oracle covers F_q(x) only (genus 0)".into()));
    }
    Ok(())
}

fn oracle(common: &Common, bound: usize, budget: u64) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "oracle", vec!["n", "value"])?;
    require_rational(&model)?;
    let counts = oracle_count(model.q(), model.p(), group.r(), bound, budget)?;
    for (n, c) in counts.iter().enumerate() {
        report.push_row(vec![Cell::int(n), Cell::int(c)]);
    }
    report.order = Some(bound as u64);
    Ok(report)
}

fn compare(common: &Common, bound: usize, budget: u64) -> Result<Outcome, Failure> {
    let (model, group, mut report) = setup(common, "compare", vec!["n", "oracle", "series", "agree"])?;
    require_rational(&model)?;
    let counts = oracle_count(model.q(), model.p(), group.r(), bound, budget)?;
    let series = phi_series(&model, &group, bound)?;
    let (mut checked, mut matched) = (0, 0);
    let mut first_bad = None;
    for (n, c) in counts.iter().enumerate() {
        let oracle = BigRational::from_integer(BigInt::from(c.clone()));
        let analytic = series.coeff(n);
        let agree = oracle == analytic;
        if !(oracle.is_zero() && analytic.is_zero()) {
            checked += 1;
            matched += usize::from(agree);
        }
        if !agree && first_bad.is_none() {
            first_bad = Some(n);
        }
        report.push_row(vec![
            Cell::int(n),
            Cell::int(c),
            rational_cell(&analytic),
            Cell::text(if agree { "yes" } else { "no" }),
        ]);
    }
    let result = match first_bad {
        None => format!("match {matched}/{checked} degrees"),
        Some(n) => format!("mismatch {matched}/{checked} degrees, first at n = {n}"),
    };
    report.note("result", Cell::text(result));
    report.order = Some(bound as u64);
    Ok(Outcome { report, mismatch: first_bad.is_some() })
}

fn disc(common: &Common, order: usize) -> Result<Report, Failure> {
    let (model, group, mut report) = setup(common, "disc", vec!["n", "value"])?;
    let view = discriminant_view(&model, &group, order)?;
    let e = &view.exponents;
    report.note("conductor_abscissa", rational_cell(&e.conductor_abscissa));
    report.note("disc_exponent_lower", rational_cell(&e.lower));
    report.note("disc_exponent_upper", rational_cell(&e.upper));
    report.note("malle_exponent", rational_cell(&e.malle));
    let cmp = match e.comparison {
        Ordering::Greater => "lower exponent exceeds Malle's",
        Ordering::Equal => "lower exponent equals Malle's",
        Ordering::Less => "lower exponent below Malle's",
    };
    report.note("comparison", Cell::text(cmp));
    match &view.table {
        Some(table) => {
            for (n, z) in table {
                report.push_row(vec![Cell::int(n), Cell::int(z)]);
            }
        }
        None => report.note("table", Cell::text("exponent bounds only for rank >= 2")),
    }
    report.order = Some(order as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_syntax() {
        let rational = FieldModel::rational(2, 2).unwrap();
        let m = parse_module("P1.0^2*P2.0^3", &rational).unwrap();
        assert_eq!(m.degree(), 8);
        let m = parse_module("inf^3 * (1,1,1)^2", &rational).unwrap();
        assert_eq!(m.degree(), 7);
        assert!(parse_module("1", &rational).unwrap().is_trivial());
        assert!(parse_module("(1,0,1)^2", &rational).is_err()); // x^2 + 1 = (x+1)^2
        assert!(parse_module("P1.3", &rational).is_err()); // three rational places
        assert!(parse_module("P1.0*inf", &rational).is_err());
        assert!(parse_module("P1.0*P1.0", &rational).is_err());
        assert!(parse_module("P1.0^0", &rational).is_err());
    }
}
