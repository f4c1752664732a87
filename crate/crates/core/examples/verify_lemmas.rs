//! Run every internal consistency check for one field and print a summary.
//!
//!     cargo run --release --example verify_lemmas -- 13 50

use foursq::{verify, FieldContext};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(13, |s| s.parse().expect("d must be an integer"));
    let norm_max: u64 = args.next().map_or(50, |s| s.parse().expect("norm bound must be a positive integer"));
    let report = verify::verify_lemmas(&FieldContext::new(d)?, norm_max)?;

    for c in &report.checks {
        match &c.skipped {
            Some(why) => println!("  {:<32} skipped: {why}", c.name),
            None => println!("  {:<32} {:>6} passed {:>4} failed", c.name, c.passed, c.failed),
        }
        for f in &c.failures {
            println!("      {f}");
        }
    }
    println!("D = {}: {} passed, {} failed", report.disc, report.passed, report.failed);
    std::process::exit(if report.failed == 0 { 0 } else { 1 });
}
