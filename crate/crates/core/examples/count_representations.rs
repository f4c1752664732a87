//! `r_Q(m)`: the number of ways to write `m` as a sum of four squares in `O_K`.
//!
//!     cargo run --example count_representations -- 17 2

use foursq::{rep, FieldContext, QuadInt};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(17, |s| s.parse().expect("d must be an integer"));
    let m: QuadInt = args.next().unwrap_or_else(|| "2".into()).parse()?;
    let k = FieldContext::new(d)?;

    let r = rep::count_representations(&k, m, true)?;
    println!("r_Q({m}) = {} over Q(sqrt {d})", r.count);
    // a handful of solutions; the rest are sign changes and permutations
    for w in r.witnesses.iter().flatten().take(6) {
        let terms: Vec<String> = w.iter().map(|c| format!("({c})^2")).collect();
        println!("  {} = {m}", terms.join(" + "));
    }
    if r.truncated {
        println!("  (witness list truncated at {})", rep::WITNESS_CAP);
    }

    // over Z this is Jacobi's formula 8 sum_{4 !| d | n} d
    let n = 30;
    println!("r_4({n}) over Z = {}", rep::jacobi_count(n));
    Ok(())
}
