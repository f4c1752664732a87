//! Fit the cusp part `a_C` of a sweep against eigenform coefficients read
//! from CSV (`ideal-norm,ideal-label,coefficient[,form]`).
//!
//!     cargo run --example eigenform_fit -- 17 forms.csv
//!
//! Without a file, a single form equal to `a_C` itself is synthesized, so the
//! fitted constant comes out as 1.

use foursq::eisenstein::{self, EigenformEntry};
use foursq::{sweep, FieldContext};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(17, |s| s.parse().expect("d must be an integer"));
    let k = FieldContext::new(d)?;

    let entries = match args.next() {
        Some(path) => eisenstein::read_eigenform_table(&k, std::fs::File::open(path)?)?,
        None => sweep::table(&k, 30, true)?
            .into_iter()
            .filter(|r| r.locally_represented)
            .map(|r| EigenformEntry { ideal_norm: r.norm as u64, ideal_label: r.m, form: "f".into(), coefficient: r.a_c })
            .collect(),
    };

    let fit = eisenstein::fit_eigenforms(&k, &entries)?;
    for (f, c) in fit.forms.iter().zip(&fit.constants) {
        println!("c_{f} = {c}");
    }
    let misses = fit.rows.iter().filter(|r| !r.matches).count();
    for r in fit.rows.iter().take(10) {
        println!("  {:<8} a_C = {:<6} predicted {}", r.m.to_string(), r.a_c.to_string(), r.predicted);
    }
    println!("{} rows, {misses} mismatches", fit.rows.len());
    Ok(())
}
