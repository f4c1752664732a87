//! Which `Q(sqrt d)` make every totally positive integer a sum of four
//! squares: an explicit non-represented element for each `d != 5`.
//!
//!     cargo run --release --example universality -- 50

use foursq::arith::is_squarefree;
use foursq::{eisenstein, FieldContext};

fn main() -> foursq::Result<()> {
    let top: i64 = std::env::args().nth(1).map_or(50, |s| s.parse().expect("bound must be an integer"));
    for d in (2..=top).filter(|&d| is_squarefree(d as u64)) {
        let k = FieldContext::new(d)?;
        let c = eisenstein::universal_check(&k)?;
        match c.witness {
            Some(w) => println!("d = {d:>3}: {w} (N = {}) has r_Q = {}", k.norm(w), c.r_q.unwrap_or(0)),
            None => println!("d = {d:>3}: universal"),
        }
    }
    Ok(())
}
