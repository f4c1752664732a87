//! Local densities `beta_P(m)` from exhaustive counting modulo `P^v`, next to
//! the closed forms.
//!
//!     cargo run --example local_density -- 2

use foursq::density;
use foursq::rational::to_f64;
use foursq::{FieldContext, QuadInt};

fn main() -> foursq::Result<()> {
    let d: i64 = std::env::args().nth(1).map_or(2, |s| s.parse().expect("d must be an integer"));
    let k = FieldContext::new(d)?;
    let samples = [QuadInt::ONE, QuadInt::new(2, 0), QuadInt::new(3, 1), QuadInt::new(4, 0), QuadInt::new(8, 0)];

    for prime in k.split_prime(2)?.iter().chain(&k.split_prime(3)?) {
        println!("{} ({:?}, N = {}):", prime.label(), prime.split_type, prime.norm());
        for &m in samples.iter().filter(|&&m| k.is_totally_positive(m)) {
            let engine = density::density(&k, prime, m)?;
            let closed = density::density_closed_form(&k, prime, m)?;
            println!(
                "  m = {:<6} ord {}  beta = {:<8} ({:.5})  closed form {:<8}  stable at level {}",
                m.to_string(),
                k.ord_at(m, prime)?,
                engine.beta.to_string(),
                to_f64(&engine.beta),
                closed.beta().to_string(),
                engine.stable_level
            );
        }
    }

    let two = &k.split_prime(2)?[0];
    let c = density::count_typed(&k, two, 3, QuadInt::ONE)?;
    println!("solutions of x1^2+..+x4^2 = 1 mod {}^3: good {}, zero {}, total {}", two.label(), c.good, c.zero, c.total);
    Ok(())
}
