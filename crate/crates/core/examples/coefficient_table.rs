//! Sweep the totally positive elements up to a norm bound and tabulate
//! `r_Q`, `a_E`, `a_C`, written as CSV to stdout.
//!
//!     cargo run --release --example coefficient_table -- 13 60 > q13.csv

use foursq::{cli, sweep, FieldContext};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(13, |s| s.parse().expect("d must be an integer"));
    let norm_max: u64 = args.next().map_or(60, |s| s.parse().expect("norm bound must be a positive integer"));
    let k = FieldContext::new(d)?;

    // one row per orbit under squares of units; r_Q and a_E are constant on orbits
    let rows = sweep::table(&k, norm_max, true)?;
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(cli::CSV_HEADER)?;
    for r in &rows {
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
    let cusp = rows.iter().filter(|r| r.a_c != num_rational::BigRational::default()).count();
    eprintln!("{} orbits, {cusp} with nonzero cusp part", rows.len());
    Ok(())
}
