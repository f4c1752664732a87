//! `L(-1, chi_D)` exactly, and `L(2, chi_D)` and `zeta_K(2)` numerically
//! by three independent routes.
//!
//!     cargo run --release --example l_values -- 5 8 12 13 17

use foursq::lvalues;

fn main() {
    let mut discs: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("D must be an integer")).collect();
    if discs.is_empty() {
        discs = vec![5, 8, 12, 13, 17];
    }
    for disc in discs {
        assert!(lvalues::is_fundamental_discriminant(disc), "{disc} is not a fundamental discriminant");
        let fe = lvalues::l_value_2(disc);
        let series = lvalues::l_value_2_series(disc, lvalues::SERIES_TERMS);
        let euler = lvalues::zeta_k2_euler(disc, lvalues::EULER_PRIME_BOUND);
        println!(
            "D = {disc:>3}  B_2,chi = {:<6}  L(-1) = {:<6}  L(2): {fe:.12} / series {series:.12}  zeta_K(2) = {:.10} (Euler {euler:.10})",
            lvalues::generalized_bernoulli2(disc).to_string(),
            lvalues::l_minus_one(disc).to_string(),
            lvalues::zeta_k2(disc),
        );
    }

    let bad: Vec<i64> = (5..1000).filter(|&d| d % 4 == 1 && lvalues::is_fundamental_discriminant(d)).filter(|&d| !lvalues::divisibility_holds(d)).collect();
    println!("character sum divisibility fails for: {bad:?}");
}
