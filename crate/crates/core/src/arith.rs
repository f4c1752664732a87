//! Rational-integer helpers: gcds, square roots, trial-division factoring,
//! modular square roots and the Kronecker symbol.

/// Largest trial divisor used by [`factor`].
pub const TRIAL_DIVISION_BOUND: u64 = 1 << 32;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn ceil_sqrt(n: u128) -> u128 {
    let s = isqrt(n);
    if s * s == n {
        s
    } else {
        s + 1
    }
}

pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let s = isqrt(n as u128) as i128;
    (s * s == n).then_some(s)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// Factor `n >= 1` into `(prime, exponent)` pairs in ascending order.
///
/// Trial division up to [`TRIAL_DIVISION_BOUND`]; a remaining cofactor is
/// returned as a prime (it is one whenever `n < 2^64`).
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q <= TRIAL_DIVISION_BOUND && q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// The `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, p: i128) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn pow_mod(mut base: u128, mut exp: u128, modulus: u128) -> u128 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// A square root of `a` modulo an odd prime `p` (Tonelli–Shanks), if one exists.
pub fn sqrt_mod(a: i128, p: u64) -> Option<u64> {
    let p128 = p as u128;
    let a = a.rem_euclid(p as i128) as u128;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p128 - 1) / 2, p128) != 1 {
        return None;
    }
    let (mut q, mut s) = (p128 - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while pow_mod(z, (p128 - 1) / 2, p128) != p128 - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p128);
    let mut t = pow_mod(a, q, p128);
    let mut r = pow_mod(a, q.div_ceil(2), p128);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p128;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p128);
        m = i;
        c = b * b % p128;
        t = t * c % p128;
        r = r * b % p128;
    }
    Some(r as u64)
}

/// The Kronecker symbol `(a | n)`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let (mut a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    // factor out 2 from n: (a|2) = 0 for even a, else +-1 by a mod 8
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    // Jacobi symbol (a|n), n odd positive
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker_bruteforce_odd_prime(a: i64, p: i64) -> i8 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(5, 11), 1);
        assert_eq!(kronecker(13, 1), 1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(13, 2), -1);
        assert_eq!(kronecker(8, 2), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for a in -40..40 {
                assert_eq!(kronecker(a, p), kronecker_bruteforce_odd_prime(a, p), "({a}|{p})");
            }
        }
    }

    #[test]
    fn tonelli_shanks() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 257, 65537] {
            for a in 0..60i128 {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!((r as i128 * r as i128 - a).rem_euclid(p as i128), 0),
                    None => assert_eq!(kronecker(a as i64, p as i64), -1),
                }
            }
        }
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(97), vec![(97, 1)]);
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(ceil_sqrt(15), 4);
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
    }
}
