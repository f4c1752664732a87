//! The Eisenstein coefficient `a_E(m)` of the theta series of the sum of four
//! squares, cusp residuals `a_C = r_Q - a_E`, closed divisor-sum formulas and
//! non-universality witnesses.
//!
//! ```text
//! a_E(m) = 6D N(m) / (sum chi(a) a (a - D))
//!        * prod_{P | 2} beta_P(m) N(P)^2 / (N(P)^2 - 1)
//!        * prod_{P odd, P | m} sum_{i=0}^{ord_P(m)} N(P)^-i
//! ```

use std::f64::consts::PI;
use std::io::Read;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::density::{self, DensityError};
use crate::error::{Error, Result};
use crate::field::{BasisKind, DivisorFilter, FieldContext, FieldError, QuadInt, SplitType};
use crate::lvalues;
use crate::rational::{int, inverse_power_sum, rat, to_f64, uint, Rational};
use crate::rep;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicTerm {
    pub prime: String,
    #[serde(with = "crate::rational::as_string")]
    pub beta: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EisensteinBreakdown {
    pub m: QuadInt,
    pub norm: i64,
    /// `6D / sum chi(a) a (a - D)`
    #[serde(with = "crate::rational::as_string")]
    pub constant: Rational,
    pub dyadic: Vec<DyadicTerm>,
    #[serde(with = "crate::rational::as_string")]
    pub dyadic_factor: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub odd_factor: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub a_e: Rational,
}

impl EisensteinBreakdown {
    pub fn locally_represented(&self) -> bool {
        self.dyadic.iter().all(|t| !t.beta.is_zero())
    }
}

/// `6D / sum_{a=1}^{D} chi_D(a) a (a - D)`.
pub fn field_constant(ctx: &FieldContext) -> Rational {
    int(6 * ctx.disc()) / lvalues::bernoulli_sum(ctx.disc()).value
}

fn check_positive(ctx: &FieldContext, m: QuadInt) -> Result<()> {
    if ctx.is_totally_positive(m) {
        Ok(())
    } else {
        Err(FieldError::NotTotallyPositive(m).into())
    }
}

/// Exact `a_E(m)`, with the dyadic densities from the generic engine.
pub fn eisenstein_coeff(ctx: &FieldContext, m: QuadInt) -> Result<EisensteinBreakdown> {
    check_positive(ctx, m)?;
    let mut dyadic = Vec::new();
    let mut dyadic_factor = Rational::one();
    for prime in ctx.split_prime(2)? {
        let beta = density::density(ctx, &prime, m)?.beta;
        let n2 = uint(prime.norm() * prime.norm());
        dyadic_factor *= &beta * &n2 / (n2 - Rational::one());
        dyadic.push(DyadicTerm { prime: prime.label(), beta });
    }
    let mut odd_factor = Rational::one();
    for (prime, k) in ctx.factor(m)? {
        if !prime.is_dyadic() {
            odd_factor *= inverse_power_sum(prime.norm(), 0, k as i64);
        }
    }
    let constant = field_constant(ctx);
    let norm = ctx.norm(m);
    let a_e = &constant * int(norm) * &dyadic_factor * &odd_factor;
    Ok(EisensteinBreakdown { m, norm, constant, dyadic, dyadic_factor, odd_factor, a_e })
}

/// `a_E(m)` through `pi^4 D^{-3/2} N(m) / zeta_K(2) * prod_{P | 2m} beta_P N^2 / (N^2 - 1)`
/// in floating point, with every `beta_P` an honest local density.
pub fn eisenstein_numeric(ctx: &FieldContext, m: QuadInt) -> Result<f64> {
    check_positive(ctx, m)?;
    let disc = ctx.disc() as f64;
    let mut value = PI.powi(4) * disc.powf(-1.5) * ctx.norm(m) as f64 / lvalues::zeta_k2(ctx.disc());
    let mut primes = ctx.split_prime(2)?;
    primes.extend(ctx.factor(m)?.into_iter().map(|(p, _)| p).filter(|p| !p.is_dyadic()));
    for prime in primes {
        let beta = match density::density(ctx, &prime, m) {
            Ok(r) => r.beta,
            Err(DensityError::BudgetExceeded { .. }) => density::density_closed_form(ctx, &prime, m)?.beta(),
            Err(e) => return Err(e.into()),
        };
        let n2 = (prime.norm() * prime.norm()) as f64;
        value *= to_f64(&beta) * n2 / (n2 - 1.0);
    }
    Ok(value)
}

fn require_field(ctx: &FieldContext, op: &'static str, d: i64) -> Result<()> {
    if ctx.d() == d {
        Ok(())
    } else {
        Err(Error::WrongField { op, expected: d, got: ctx.d() })
    }
}

fn divisor_sums(ctx: &FieldContext, m: QuadInt) -> Result<(i64, i64, i64)> {
    let s = |f| ctx.divisor_norm_sum(m, f).map(|v| v as i64);
    Ok((s(DivisorFilter::All)?, s(DivisorFilter::DivisibleBy2)?, s(DivisorFilter::DivisibleBy4)?))
}

/// `8 sum N(d) - 4 sum_{2 | d} N(d) + 8 sum_{4 | d} N(d)` over `Q(sqrt 5)`.
pub fn closed_formula_sqrt5(ctx: &FieldContext, m: QuadInt) -> Result<i64> {
    require_field(ctx, "closed_formula_sqrt5", 5)?;
    check_positive(ctx, m)?;
    let (all, by2, by4) = divisor_sums(ctx, m)?;
    Ok(8 * all - 4 * by2 + 8 * by4)
}

/// `8 sum N(d) - 6 sum_{(2) | d} N(d) + 4 sum_{(4) | d} N(d)` over `Q(sqrt 2)`,
/// valid for locally represented `m`.
pub fn closed_formula_sqrt2(ctx: &FieldContext, m: QuadInt) -> Result<i64> {
    require_field(ctx, "closed_formula_sqrt2", 2)?;
    check_positive(ctx, m)?;
    if !density::is_locally_represented(ctx, m)? {
        return Err(Error::NotLocallyRepresented(m));
    }
    let (all, by2, by4) = divisor_sums(ctx, m)?;
    Ok(8 * all - 6 * by2 + 4 * by4)
}

/// A totally positive integer that is not a sum of four squares, for `d != 5`:
/// `ceil(sqrt d) + sqrt d`, or `floor((1 + sqrt d) / 2) + (1 + sqrt d) / 2`.
pub fn nonuniversality_witness(ctx: &FieldContext) -> Result<QuadInt> {
    if ctx.d() == 5 {
        return Err(Error::Universal);
    }
    let s = arith::isqrt(ctx.d() as u128) as i64;
    let x = match ctx.basis_kind() {
        BasisKind::Sqrt => s + 1,
        BasisKind::Half => (1 + s) / 2,
    };
    let m = QuadInt::new(x, 1);
    debug_assert!(ctx.is_totally_positive(m));
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniversalCheck {
    pub d: i64,
    pub universal: bool,
    pub witness: Option<QuadInt>,
    #[serde(rename = "r_Q")]
    pub r_q: Option<u64>,
}

/// The witness and its representation number, or the universality verdict for `d = 5`.
pub fn universal_check(ctx: &FieldContext) -> Result<UniversalCheck> {
    match nonuniversality_witness(ctx) {
        Ok(w) => {
            let r = rep::representation_number(ctx, w)?;
            Ok(UniversalCheck { d: ctx.d(), universal: false, witness: Some(w), r_q: Some(r) })
        }
        Err(Error::Universal) => Ok(UniversalCheck { d: ctx.d(), universal: true, witness: None, r_q: None }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub m: QuadInt,
    pub divisor_sum: u64,
    pub lower: f64,
    #[serde(with = "crate::rational::as_string")]
    pub a_e: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub upper: Rational,
    pub ok: bool,
}

/// `192 / (5 D^{3/2}) sum N(d) <= a_E(m) <= 8/5 sum N(d)` for odd `m` when `D = 5 mod 8`.
pub fn eisenstein_bound_check(ctx: &FieldContext, m: QuadInt) -> Result<BoundCheck> {
    if ctx.disc().rem_euclid(8) != 5 {
        return Err(Error::Unsupported(format!("bound check needs D = 5 mod 8, got D = {}", ctx.disc())));
    }
    check_positive(ctx, m)?;
    let two = &ctx.split_prime(2)?[0];
    debug_assert_eq!(two.split_type, SplitType::Inert);
    if ctx.ord_at(m, two)? > 0 {
        return Err(Error::Unsupported(format!("bound check needs m prime to 2, got {m}")));
    }
    let divisor_sum = ctx.divisor_norm_sum(m, DivisorFilter::All)?;
    let a_e = eisenstein_coeff(ctx, m)?.a_e;
    let lower = 192.0 / (5.0 * (ctx.disc() as f64).powf(1.5)) * divisor_sum as f64;
    let upper = rat(8, 5) * uint(divisor_sum);
    let ok = to_f64(&a_e) >= lower * (1.0 - 1e-12) && a_e <= upper;
    Ok(BoundCheck { m, divisor_sum, lower, a_e, upper, ok })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffRow {
    pub m: QuadInt,
    pub norm: i64,
    #[serde(rename = "r_Q")]
    pub r_q: u64,
    #[serde(rename = "a_E", with = "crate::rational::as_string")]
    pub a_e: Rational,
    #[serde(rename = "a_C", with = "crate::rational::as_string")]
    pub a_c: Rational,
    pub locally_represented: bool,
}

/// `r_Q(m) = a_E(m) + a_C(m)`.
pub fn decompose(ctx: &FieldContext, m: QuadInt) -> Result<CoeffRow> {
    let e = eisenstein_coeff(ctx, m)?;
    let r_q = rep::representation_number(ctx, m)?;
    let a_c = uint(r_q) - &e.a_e;
    Ok(CoeffRow { m, norm: e.norm, r_q, locally_represented: e.locally_represented(), a_e: e.a_e, a_c })
}

/// One eigenform coefficient read from a table.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenformEntry {
    pub ideal_norm: u64,
    /// a totally positive generator, in element literal syntax
    pub ideal_label: QuadInt,
    pub form: String,
    pub coefficient: Rational,
}

/// Read CSV rows `ideal-norm,ideal-label,coefficient[,form]`.
///
/// Each label is a totally positive generator `m`; the optional `form`
/// column names the eigenform (default `f`), so several forms can share one file.
pub fn read_eigenform_table<R: Read>(ctx: &FieldContext, reader: R) -> Result<Vec<EigenformEntry>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(norm_col), Some(label_col), Some(coeff_col)) = (col("ideal-norm"), col("ideal-label"), col("coefficient"))
    else {
        return Err(Error::Eigenform("expected columns ideal-norm, ideal-label, coefficient".into()));
    };
    let form_col = col("form");
    let mut out = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let bad = |what: &str| Error::Eigenform(format!("row {}: bad {what}", line + 1));
        let ideal_norm: u64 = record[norm_col].parse().map_err(|_| bad("ideal-norm"))?;
        let ideal_label: QuadInt = record[label_col].parse()?;
        let coefficient: Rational = record[coeff_col].parse().map_err(|_| bad("coefficient"))?;
        let form = form_col.map_or_else(|| "f".to_string(), |c| record[c].to_string());
        if ctx.norm(ideal_label).unsigned_abs() != ideal_norm {
            return Err(Error::Eigenform(format!(
                "row {}: N({ideal_label}) = {} but ideal-norm is {ideal_norm}",
                line + 1,
                ctx.norm(ideal_label)
            )));
        }
        out.push(EigenformEntry { ideal_norm, ideal_label, form, coefficient });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub m: QuadInt,
    #[serde(rename = "a_C", with = "crate::rational::as_string")]
    pub a_c: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub predicted: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenformFit {
    pub forms: Vec<String>,
    #[serde(with = "crate::rational::as_string::vec")]
    pub constants: Vec<Rational>,
    pub rows: Vec<FitRow>,
}

/// Solve `a_C(m) = sum_f c_f a_f(m)` exactly from the leading independent rows,
/// then report how every row is predicted.
pub fn fit_eigenforms(ctx: &FieldContext, entries: &[EigenformEntry]) -> Result<EigenformFit> {
    let mut forms: Vec<String> = Vec::new();
    let mut labels: Vec<QuadInt> = Vec::new();
    for e in entries {
        if !forms.contains(&e.form) {
            forms.push(e.form.clone());
        }
        if !labels.contains(&e.ideal_label) {
            labels.push(e.ideal_label);
        }
    }
    let mut rows: Vec<(QuadInt, Vec<Rational>, Rational)> = Vec::new();
    for &m in &labels {
        let coeffs: Vec<Rational> = forms
            .iter()
            .map(|f| {
                entries
                    .iter()
                    .find(|e| e.ideal_label == m && &e.form == f)
                    .map_or_else(Rational::zero, |e| e.coefficient.clone())
            })
            .collect();
        rows.push((m, coeffs, decompose(ctx, m)?.a_c));
    }
    let system: Vec<(Vec<Rational>, Rational)> = rows.iter().map(|(_, a, b)| (a.clone(), b.clone())).collect();
    let constants = solve_leading(&system, forms.len())
        .ok_or_else(|| Error::Eigenform("the coefficient rows do not determine the constants".into()))?;
    let fitted = rows
        .into_iter()
        .map(|(m, coeffs, a_c)| {
            let predicted: Rational = coeffs.iter().zip(&constants).map(|(a, c)| a * c).sum();
            FitRow { m, matches: predicted == a_c, a_c, predicted }
        })
        .collect();
    Ok(EigenformFit { forms, constants, rows: fitted })
}

/// Exact solution of the square system formed by the first `k` linearly
/// independent rows of `[A | b]`.
fn solve_leading(rows: &[(Vec<Rational>, Rational)], k: usize) -> Option<Vec<Rational>> {
    // greedy row selection with incremental elimination
    let mut basis: Vec<(Vec<Rational>, Rational, usize)> = Vec::new();
    for (a, b) in rows {
        let (mut a, mut b) = (a.clone(), b.clone());
        for (ra, rb, pivot) in &basis {
            if !a[*pivot].is_zero() {
                let f = &a[*pivot] / &ra[*pivot];
                for j in 0..k {
                    a[j] = &a[j] - &f * &ra[j];
                }
                b = &b - &f * rb;
            }
        }
        if let Some(pivot) = (0..k).find(|&j| !a[j].is_zero()) {
            basis.push((a, b, pivot));
            if basis.len() == k {
                break;
            }
        }
    }
    if basis.len() < k {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (a, b, pivot) in basis.iter().rev() {
        let rest: Rational = (0..k).filter(|j| j != pivot).map(|j| &a[j] * &x[j]).sum();
        x[*pivot] = (b - rest) / &a[*pivot];
    }
    Some(x)
}
