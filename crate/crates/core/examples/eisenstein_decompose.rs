//! Split `r_Q(m) = a_E(m) + a_C(m)` into Eisenstein and cusp parts, with the
//! local factors that make up `a_E`.
//!
//!     cargo run --example eisenstein_decompose -- 17 "2+w"

use foursq::rational::to_f64;
use foursq::{eisenstein, FieldContext, QuadInt};

fn main() -> foursq::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(17, |s| s.parse().expect("d must be an integer"));
    let m: QuadInt = args.next().unwrap_or_else(|| "2+w".into()).parse()?;
    let k = FieldContext::new(d)?;

    let e = eisenstein::eisenstein_coeff(&k, m)?;
    println!("Q(sqrt {d}), m = {m}, N(m) = {}", e.norm);
    println!("  field constant  {}", e.constant);
    for t in &e.dyadic {
        println!("  beta at {:<6} {}", t.prime, t.beta);
    }
    println!("  dyadic factor   {}", e.dyadic_factor);
    println!("  odd factor      {}", e.odd_factor);
    println!("  a_E = {}  (through zeta_K(2): {:.12})", e.a_e, eisenstein::eisenstein_numeric(&k, m)?);

    let row = eisenstein::decompose(&k, m)?;
    println!("  r_Q = {}, a_C = {} ({:.4})", row.r_q, row.a_c, to_f64(&row.a_c));
    if !row.locally_represented {
        println!("  {m} is not a sum of four squares in some completion");
    }
    Ok(())
}
