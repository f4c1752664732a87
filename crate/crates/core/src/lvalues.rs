//! Special values of `L(s, chi_D)` and `zeta_K` at `s = 2` and `s = -1`.
//!
//! Everything feeding `a_E` is exact (`B_{2,chi}` and the character sum
//! `sum chi(a) a (a - D)`); the floating-point values exist to cross-check
//! the exact route against the functional equation, the Dirichlet series and
//! the Euler product.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::field::kronecker;
use crate::rational::{int, rat, to_f64, Rational};

/// Terms used by [`l_value_2_series`] when no count is given.
pub const SERIES_TERMS: u64 = 1_000_000;

/// Primes below this bound enter [`zeta_k2_euler`] by default.
pub const EULER_PRIME_BOUND: u64 = 1_000_000;

/// `B_2(t) = t^2 - t + 1/6`.
pub fn bernoulli_poly2(t: &Rational) -> Rational {
    t * t - t + rat(1, 6)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BernoulliSum {
    pub disc: i64,
    /// `sum_{a=1}^{D} chi_D(a) a (a - D)`
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
    /// `sum_{a=1}^{(D-1)/2} chi_D(a) a (a - D)`, for odd `D`
    #[serde(serialize_with = "serialize_opt")]
    pub half_value: Option<Rational>,
}

fn serialize_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

fn partial_sum(disc: i64, upto: i64) -> i64 {
    (1..=upto).map(|a| kronecker(disc, a) as i64 * a * (a - disc)).sum()
}

pub fn bernoulli_sum(disc: i64) -> BernoulliSum {
    let value = int(partial_sum(disc, disc));
    let half_value = (disc % 2 != 0).then(|| int(partial_sum(disc, (disc - 1) / 2)));
    BernoulliSum { disc, value, half_value }
}

/// `B_{2,chi} = D sum_{a=1}^{D} chi(a) B_2((a - D) / D)`.
pub fn generalized_bernoulli2(disc: i64) -> Rational {
    let sum: Rational = (1..=disc)
        .map(|a| int(kronecker(disc, a) as i64) * bernoulli_poly2(&rat(a - disc, disc)))
        .sum();
    int(disc) * sum
}

/// `L(-1, chi_D) = -B_{2,chi} / 2`.
pub fn l_minus_one(disc: i64) -> Rational {
    -generalized_bernoulli2(disc) / int(2)
}

/// `tau(chi_D) = sum_{a=1}^{D} chi(a) e^{2 pi i a / D}`.
pub fn gauss_sum(disc: i64) -> Complex64 {
    (1..=disc)
        .map(|a| {
            let theta = 2.0 * PI * a as f64 / disc as f64;
            Complex64::from_polar(kronecker(disc, a) as f64, theta)
        })
        .sum()
}

/// `L(2, chi_D)` from the functional equation at `s = 2`, `delta = 0`:
/// `tau / 2 * (2 pi / D)^2 * L(-1, chi) / (Gamma(2) cos(pi))`.
pub fn l_value_2(disc: i64) -> f64 {
    let tau = gauss_sum(disc);
    let l_neg = to_f64(&l_minus_one(disc));
    let scale = (2.0 * PI / disc as f64).powi(2) * l_neg / PI.cos();
    let value = tau / 2.0 * scale;
    debug_assert!(value.im.abs() <= 1e-9 * value.re.abs(), "even characters give a real value");
    assert!(value.re > 0.0, "L(2, chi) must be positive, got {}", value.re);
    value.re
}

/// `sum_{n <= terms} chi_D(n) / n^2`.
pub fn l_value_2_series(disc: i64, terms: u64) -> f64 {
    let chi: Vec<f64> = (0..disc).map(|a| kronecker(disc, a) as f64).collect();
    // summed from the small tail upwards to limit rounding
    (1..=terms).rev().map(|n| chi[(n % disc as u64) as usize] / (n as f64 * n as f64)).sum()
}

/// Exact `L(2, chi_D) / pi^2 = value / D^{5/2}` numerically, for reference.
pub fn l_value_2_closed(disc: i64) -> f64 {
    PI * PI * to_f64(&bernoulli_sum(disc).value) / (disc as f64).powf(2.5)
}

/// `zeta_K(2) = zeta(2) L(2, chi_D)`.
pub fn zeta_k2(disc: i64) -> f64 {
    PI * PI / 6.0 * l_value_2(disc)
}

/// `zeta_K(2) = pi^4 / (6D) tau(chi) sum chi(a) B_2((a - D) / D)`.
pub fn zeta_k2_display(disc: i64) -> f64 {
    let b: Rational = (1..=disc)
        .map(|a| int(kronecker(disc, a) as i64) * bernoulli_poly2(&rat(a - disc, disc)))
        .sum();
    let full = gauss_sum(disc) * (PI.powi(4) / (6.0 * disc as f64) * to_f64(&b));
    full.re
}

pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Euler product `prod_{p < bound} (1 - p^-2)^-1 (1 - chi(p) p^-2)^-1` for `zeta_K(2)`.
pub fn zeta_k2_euler(disc: i64, bound: u64) -> f64 {
    primes_below(bound)
        .iter()
        .map(|&p| {
            let x = 1.0 / (p as f64 * p as f64);
            let chi = kronecker(disc, p as i64) as f64;
            1.0 / ((1.0 - x) * (1.0 - chi * x))
        })
        .product()
}

/// Fundamental discriminant test for positive `D`.
pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc <= 1 {
        return false;
    }
    let sqfree = |n: i64| crate::arith::is_squarefree(n as u64);
    match disc.rem_euclid(4) {
        1 => sqfree(disc),
        0 => matches!((disc / 4).rem_euclid(4), 2 | 3) && sqfree(disc / 4),
        _ => false,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LValueReport {
    #[serde(rename = "D")]
    pub disc: i64,
    #[serde(with = "crate::rational::as_string")]
    pub bernoulli_sum: Rational,
    #[serde(rename = "B2_chi", with = "crate::rational::as_string")]
    pub b2_chi: Rational,
    #[serde(rename = "L_minus_1", with = "crate::rational::as_string")]
    pub l_minus_one: Rational,
    #[serde(rename = "L2_numeric")]
    pub l2_numeric: f64,
    #[serde(rename = "zetaK2_numeric")]
    pub zeta_k2_numeric: f64,
    pub method: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMethod {
    Bernoulli,
    Series,
}

pub fn report(disc: i64, method: LMethod) -> LValueReport {
    let l2 = match method {
        LMethod::Bernoulli => l_value_2(disc),
        LMethod::Series => l_value_2_series(disc, SERIES_TERMS),
    };
    let b2 = generalized_bernoulli2(disc);
    LValueReport {
        disc,
        bernoulli_sum: bernoulli_sum(disc).value,
        l_minus_one: -b2.clone() / int(2),
        b2_chi: b2,
        l2_numeric: l2,
        zeta_k2_numeric: PI * PI / 6.0 * l2,
        method: match method {
            LMethod::Bernoulli => "bernoulli",
            LMethod::Series => "series",
        },
    }
}

/// `true` when `value` is even and, for `D > 5`, divisible by `D`.
pub fn divisibility_holds(disc: i64) -> bool {
    let v = partial_sum(disc, disc);
    v % 2 == 0 && (disc <= 5 || v % disc == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn bernoulli_polynomial() {
        assert_eq!(bernoulli_poly2(&int(0)), rat(1, 6));
        assert_eq!(bernoulli_poly2(&rat(1, 2)), rat(-1, 12));
        assert_eq!(bernoulli_poly2(&int(1)), rat(1, 6));
        for k in 0..20 {
            let t = rat(k, 7);
            assert_eq!(bernoulli_poly2(&t), bernoulli_poly2(&(int(1) - t.clone())));
        }
    }

    #[test]
    fn character_sums() {
        // direct: a = 1, 3, 5, 7 contribute -7, 15, 15, -7
        assert_eq!(bernoulli_sum(8).value, int(16));
        assert_eq!(bernoulli_sum(12).value, int(48));
        assert_eq!(bernoulli_sum(17).value, int(136));
        assert_eq!(bernoulli_sum(5).value, int(4));
        assert_eq!(bernoulli_sum(13).value, int(52));
        for disc in [5, 13, 17, 21, 29] {
            let s = bernoulli_sum(disc);
            assert_eq!(s.value, int(2) * s.half_value.unwrap());
        }
        assert_eq!(bernoulli_sum(8).half_value, None);
    }

    #[test]
    fn generalized_bernoulli_is_value_over_d() {
        for disc in [5, 8, 12, 13, 17, 21, 24, 28, 29] {
            assert_eq!(generalized_bernoulli2(disc), bernoulli_sum(disc).value / int(disc));
            assert_eq!(l_minus_one(disc), -bernoulli_sum(disc).value / int(2 * disc));
        }
    }

    #[test]
    fn gauss_sums() {
        let t5 = gauss_sum(5);
        assert!((t5.re - 5f64.sqrt()).abs() < 1e-12 && t5.im.abs() < 1e-12);
        for disc in [8, 12, 13, 17, 21, 24] {
            assert!((gauss_sum(disc).norm() - (disc as f64).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn functional_equation_matches_series() {
        for disc in [5, 8, 12, 13, 17] {
            let fe = l_value_2(disc);
            assert!(rel(fe, l_value_2_series(disc, SERIES_TERMS)) < 1e-8, "D={disc}");
            assert!(rel(fe, l_value_2_closed(disc)) < 1e-12);
            assert!(rel(zeta_k2_display(disc), zeta_k2(disc)) < 1e-12);
        }
        assert!((l_value_2(5) - 0.70621).abs() < 1e-5);
    }

    #[test]
    fn euler_product_matches() {
        for disc in [5, 8, 12, 13, 17] {
            assert!(rel(zeta_k2_euler(disc, EULER_PRIME_BOUND), zeta_k2(disc)) < 1e-6, "D={disc}");
        }
    }

    #[test]
    fn divisibility_lemma_and_discriminants() {
        assert!(is_fundamental_discriminant(5));
        assert!(is_fundamental_discriminant(8));
        assert!(is_fundamental_discriminant(12));
        assert!(!is_fundamental_discriminant(9));
        assert!(!is_fundamental_discriminant(16));
        assert!(!is_fundamental_discriminant(20));
        for disc in (5..1000).filter(|&d| d % 4 == 1 && is_fundamental_discriminant(d)) {
            assert!(divisibility_holds(disc), "D={disc}");
        }
    }

    #[test]
    fn sieve() {
        assert_eq!(primes_below(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_below(10_000).len(), 1229);
    }
}
