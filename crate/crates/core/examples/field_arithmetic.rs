//! Ring of integers of `Q(sqrt d)`: basis, units, prime splitting and
//! factorization of elements.
//!
//!     cargo run --example field_arithmetic -- 17 "11+7*w"

use foursq::{FieldContext, QuadInt};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(17, |s| s.parse().expect("d must be an integer"));
    let k = FieldContext::new(d)?;
    let m: QuadInt = match args.next() {
        Some(s) => s.parse()?,
        None => QuadInt::new(11, 7),
    };

    let (t, n) = k.min_poly();
    println!("Q(sqrt {d}), D = {}, {}, w^2 = {t}w + {n}", k.disc(), k.omega_description());
    let eps = k.fundamental_unit();
    println!("fundamental unit {eps}, norm {}", k.norm(eps));

    for p in [2, 3, 5, 7] {
        let primes = k.split_prime(p)?;
        let desc: Vec<String> = primes
            .iter()
            .map(|pr| format!("{} (N = {}, uniformizer {})", pr.label(), pr.norm(), pr.uniformizer))
            .collect();
        println!("{p}: {:?} -> {}", primes[0].split_type, desc.join(", "));
    }

    println!("m = {m}: N = {}, Tr = {}, conj = {}", k.norm(m), k.trace(m), k.conj(m));
    println!("totally positive: {}", k.is_totally_positive(m));
    for (pr, e) in k.factor(m)? {
        println!("  {}^{e}", pr.label());
    }
    Ok(())
}
