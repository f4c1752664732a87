//! Exact rationals used for densities and Eisenstein coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^(-k)`.
pub fn inv_pow(base: u64, k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(base).pow(k))
}

/// `sum_{i=lo}^{hi} base^(-i)`; zero when the range is empty.
pub fn inverse_power_sum(base: u64, lo: i64, hi: i64) -> Rational {
    if hi < lo {
        return Rational::zero();
    }
    (lo..=hi).map(|i| inv_pow(base, i as u32)).sum()
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => f64::NAN,
    }
}

/// Serialize as `"num/den"` (or `"n"` for integers), never as a float.
pub mod as_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub mod vec {
        use super::Rational;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_powers() {
        assert_eq!(inverse_power_sum(4, 0, -1), Rational::zero());
        assert_eq!(inverse_power_sum(2, 0, 2), rat(7, 4));
        assert_eq!(inv_pow(16, 2), rat(1, 256));
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(int(12).to_string(), "12");
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
