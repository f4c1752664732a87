//! Command-line front end: argument model, dispatch and output formatting.
//!
//! Exit codes: 0 success, 1 internal failure, 2 domain error. Errors are
//! reported as a JSON object `{"error": kind, "message": ...}` on the output
//! stream. JSON output is one object per line.

use std::fs::File;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::density::{self, ClosedForm, DensityError};
use crate::eisenstein;
use crate::error::{Error, Result};
use crate::field::{FieldContext, PrimeFactor, QuadInt, SplitType};
use crate::lvalues::{self, LMethod};
use crate::rep;
use crate::sweep;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum MethodArg {
    #[default]
    Bernoulli,
    Series,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "foursq", version, about = "Sums of four squares over real quadratic fields")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Factor an element into prime ideals, or show how a rational prime splits.
    Factor {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<QuadInt>,
        #[arg(long)]
        p: Option<i64>,
    },
    /// Brute-force representation number r_Q(m).
    Count {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: QuadInt,
        #[arg(long)]
        witnesses: bool,
    },
    /// Local densities at the primes above p.
    Density {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: QuadInt,
        #[arg(long, default_value_t = 2)]
        p: i64,
        /// also report Good/Zero/total counts modulo P^level
        #[arg(long)]
        level: Option<u32>,
    },
    /// Special values L(-1, chi_D), L(2, chi_D) and zeta_K(2).
    Lvalue {
        #[arg(long = "D")]
        disc: Option<i64>,
        /// take D from the field Q(sqrt d) instead
        #[arg(long, conflicts_with = "disc")]
        d: Option<i64>,
        #[arg(long, value_enum, default_value_t)]
        method: MethodArg,
    },
    /// Exact Eisenstein coefficient a_E(m).
    Eisenstein {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: QuadInt,
    },
    /// r_Q(m) = a_E(m) + a_C(m).
    Decompose {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: QuadInt,
    },
    /// Decomposition rows for all totally positive m with N(m) <= norm-max.
    Table {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        norm_max: u64,
        /// one representative per orbit under squares of units
        #[arg(long)]
        orbits: bool,
        /// fit cusp constants to an eigenform coefficient CSV instead
        #[arg(long)]
        eigenform: Option<PathBuf>,
    },
    /// Non-universality witness and its representation number.
    UniversalCheck {
        #[arg(long)]
        d: i64,
    },
    /// Run the lemma cross-validation suite for one field.
    VerifyLemmas {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        norm_max: u64,
    },
}

#[derive(Serialize)]
struct PrimeView {
    label: String,
    p: i64,
    split_type: SplitType,
    e: u32,
    f: u32,
    norm: u64,
    hnf: [[i64; 2]; 2],
    uniformizer: QuadInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<u32>,
}

fn prime_view(prime: &PrimeFactor, exponent: Option<u32>) -> PrimeView {
    PrimeView {
        label: prime.label(),
        p: prime.p,
        split_type: prime.split_type,
        e: prime.e,
        f: prime.f,
        norm: prime.norm(),
        hnf: prime.ideal.matrix(),
        uniformizer: prime.uniformizer,
        exponent,
    }
}

fn field_header(ctx: &FieldContext) -> Value {
    let (t, n) = ctx.min_poly();
    let linear = match t {
        0 => String::new(),
        1 => " - X".to_string(),
        t => format!(" - {t}X"),
    };
    json!({"d": ctx.d(), "D": ctx.disc(), "w": ctx.omega_description(), "min_poly": format!("X^2{linear} - {n}")})
}

/// Run one command, writing to `out`; never panics.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> i32 {
    let result = catch_unwind(AssertUnwindSafe(|| execute(config, out)));
    let (err, code) = match result {
        Ok(Ok(code)) => return code,
        Ok(Err(e)) => {
            let code = if e.is_domain() { EXIT_DOMAIN } else { EXIT_INTERNAL };
            (json!({"error": e.kind(), "message": e.to_string()}), code)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal failure".into());
            (json!({"error": "internal", "message": msg}), EXIT_INTERNAL)
        }
    };
    let _ = writeln!(out, "{err}");
    code
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if config.format == Format::Csv && !matches!(config.command, Command::Table { .. }) {
        return Err(Error::Unsupported("csv output is only available for `table`".into()));
    }
    dispatch(config, out)
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let format = config.format;
    match &config.command {
        Command::Factor { d, m, p } => {
            let ctx = FieldContext::new(*d)?;
            let value = match (m, p) {
                (Some(m), _) => {
                    let factors: Vec<PrimeView> =
                        ctx.factor(*m)?.iter().map(|(q, k)| prime_view(q, Some(*k))).collect();
                    json!({"field": field_header(&ctx), "m": m, "norm": ctx.norm(*m), "factors": factors})
                }
                (None, Some(p)) => {
                    let primes: Vec<PrimeView> = ctx.split_prime(*p)?.iter().map(|q| prime_view(q, None)).collect();
                    json!({"field": field_header(&ctx), "p": p, "primes": primes})
                }
                (None, None) => return Err(Error::Unsupported("factor needs --m or --p".into())),
            };
            emit(out, format, &value).map(|()| EXIT_OK)
        }
        Command::Count { d, m, witnesses } => {
            let ctx = FieldContext::new(*d)?;
            let r = rep::count_representations(&ctx, *m, *witnesses)?;
            emit(out, format, &with_field(&ctx, &r)).map(|()| EXIT_OK)
        }
        Command::Density { d, m, p, level } => {
            let ctx = FieldContext::new(*d)?;
            let mut rows = Vec::new();
            for prime in ctx.split_prime(*p)? {
                rows.push(density_row(&ctx, &prime, *m, *level)?);
            }
            emit(out, format, &json!({"field": field_header(&ctx), "m": m, "primes": rows})).map(|()| EXIT_OK)
        }
        Command::Lvalue { disc, d, method } => {
            let disc = match (disc, d) {
                (Some(disc), _) => {
                    if !lvalues::is_fundamental_discriminant(*disc) {
                        return Err(Error::Unsupported(format!("{disc} is not a positive fundamental discriminant")));
                    }
                    *disc
                }
                (None, Some(d)) => FieldContext::new(*d)?.disc(),
                (None, None) => return Err(Error::Unsupported("lvalue needs --D or --d".into())),
            };
            let method = match method {
                MethodArg::Bernoulli => LMethod::Bernoulli,
                MethodArg::Series => LMethod::Series,
            };
            emit(out, format, &lvalues::report(disc, method)).map(|()| EXIT_OK)
        }
        Command::Eisenstein { d, m } => {
            let ctx = FieldContext::new(*d)?;
            let e = eisenstein::eisenstein_coeff(&ctx, *m)?;
            let mut value = with_field(&ctx, &e);
            value["a_E_numeric"] = json!(eisenstein::eisenstein_numeric(&ctx, *m)?);
            emit(out, format, &value).map(|()| EXIT_OK)
        }
        Command::Decompose { d, m } => {
            let ctx = FieldContext::new(*d)?;
            emit(out, format, &eisenstein::decompose(&ctx, *m)?).map(|()| EXIT_OK)
        }
        Command::Table { d, norm_max, orbits, eigenform } => {
            let ctx = FieldContext::new(*d)?;
            if let Some(path) = eigenform {
                let entries = eisenstein::read_eigenform_table(&ctx, File::open(path)?)?;
                return emit_fit(out, format, &eisenstein::fit_eigenforms(&ctx, &entries)?).map(|()| EXIT_OK);
            }
            if *norm_max == 0 {
                return Err(Error::Unsupported("norm-max must be at least 1".into()));
            }
            emit_table(out, format, &sweep::table(&ctx, *norm_max, *orbits)?).map(|()| EXIT_OK)
        }
        Command::UniversalCheck { d } => {
            let ctx = FieldContext::new(*d)?;
            emit(out, format, &eisenstein::universal_check(&ctx)?).map(|()| EXIT_OK)
        }
        Command::VerifyLemmas { d, norm_max } => {
            let ctx = FieldContext::new(*d)?;
            let report = verify::verify_lemmas(&ctx, *norm_max)?;
            emit(out, format, &report)?;
            Ok(if report.failed > 0 { EXIT_INTERNAL } else { EXIT_OK })
        }
    }
}

fn with_field<T: Serialize>(ctx: &FieldContext, value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("serializable");
    v["field"] = field_header(ctx);
    v
}

fn density_row(ctx: &FieldContext, prime: &PrimeFactor, m: QuadInt, level: Option<u32>) -> Result<Value> {
    if m.is_zero() {
        return Err(DensityError::ZeroElement.into());
    }
    let closed = match density::density_closed_form(ctx, prime, m)? {
        ClosedForm::Density(b) => json!(b.to_string()),
        ClosedForm::LocalObstruction => json!("obstructed"),
    };
    let mut row = json!({
        "prime": prime_view(prime, None),
        "ord": ctx.ord_at(m, prime)?,
        "closed_form": closed,
    });
    match density::density(ctx, prime, m) {
        Ok(r) => {
            let agrees = r.beta == density::density_closed_form(ctx, prime, m)?.beta();
            row["engine"] = serde_json::to_value(&r).expect("serializable");
            row["agrees"] = json!(agrees);
        }
        Err(e @ DensityError::BudgetExceeded { .. }) => row["engine_error"] = json!(e.to_string()),
        Err(e) => return Err(e.into()),
    }
    if let Some(v) = level {
        row["counts"] = serde_json::to_value(density::count_typed(ctx, prime, v, m)?).expect("serializable");
    }
    Ok(row)
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T) -> Result<()> {
    let value = serde_json::to_value(value).expect("serializable");
    match format {
        Format::Json => writeln!(out, "{value}")?,
        _ => {
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            for line in lines {
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

/// `key.path: value` lines for text output.
fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, lines)),
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, lines))
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            lines.push(format!("{prefix}: [{}]", parts.join(", ")));
        }
        _ => lines.push(format!("{prefix}: {}", scalar_text(value))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub const CSV_HEADER: [&str; 6] = ["m", "norm", "r_Q", "a_E", "a_C", "locally_represented"];

fn emit_table(out: &mut dyn Write, format: Format, rows: &[eisenstein::CoeffRow]) -> Result<()> {
    match format {
        Format::Json => {
            for row in rows {
                writeln!(out, "{}", serde_json::to_string(row).expect("serializable"))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.write_record([
                    r.m.to_string(),
                    r.norm.to_string(),
                    r.r_q.to_string(),
                    r.a_e.to_string(),
                    r.a_c.to_string(),
                    r.locally_represented.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{:>14} {:>6} {:>8} {:>12} {:>12}  local", "m", "N(m)", "r_Q", "a_E", "a_C")?;
            for r in rows {
                writeln!(
                    out,
                    "{:>14} {:>6} {:>8} {:>12} {:>12}  {}",
                    r.m.to_string(),
                    r.norm,
                    r.r_q,
                    r.a_e.to_string(),
                    r.a_c.to_string(),
                    if r.locally_represented { "yes" } else { "no" }
                )?;
            }
        }
    }
    Ok(())
}

fn emit_fit(out: &mut dyn Write, format: Format, fit: &eisenstein::EigenformFit) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["m", "a_C", "predicted", "matches"])?;
            for r in &fit.rows {
                w.write_record([r.m.to_string(), r.a_c.to_string(), r.predicted.to_string(), r.matches.to_string()])?;
            }
            w.flush()?;
            Ok(())
        }
        _ => emit(out, format, fit),
    }
}

/// Entry point for the binary: parse process arguments and run.
pub fn main_from_env() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run(&config, &mut lock)
}

/// Parse an argument vector (first item is the program name) and run.
pub fn run_args<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out),
        Err(e) => {
            let _ = writeln!(out, "{}", json!({"error": "usage", "message": e.to_string()}));
            EXIT_DOMAIN
        }
    }
}
