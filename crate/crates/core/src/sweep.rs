//! Enumeration of totally positive elements by norm, and batch tables of
//! `(r_Q, a_E, a_C)`.
//!
//! For a fixed norm there are infinitely many totally positive elements
//! (multiply by `eps^2`), so the raw sweep is the finite window
//! `N(m) <= B, Tr(m) <= T_B` with `T_B >= sqrt(B) (eps + 1/eps)`. Every orbit
//! under `<eps^2>` has its trace-minimal member inside the window.
//! `r_Q` and `a_E` are constant on those orbits (`x -> eps x` maps solutions).

use rayon::prelude::*;

use crate::arith;
use crate::eisenstein::{self, CoeffRow};
use crate::error::Result;
use crate::field::{FieldContext, QuadInt};

/// Trace bound of the raw window for norms up to `norm_max`.
pub fn trace_window(ctx: &FieldContext, norm_max: u64) -> i64 {
    let eps = ctx.embeddings(ctx.fundamental_unit()).0.abs();
    ((norm_max as f64).sqrt() * (eps + 1.0 / eps)).floor() as i64 + 1
}

/// The member of `m`'s `<eps^2>`-orbit with least `(trace, x, y)`.
pub fn canonical_orbit_rep(ctx: &FieldContext, m: QuadInt) -> QuadInt {
    let u = ctx.square(ctx.fundamental_unit());
    let u_inv = ctx.conj(u);
    let mut best = m;
    // trace is convex along the orbit; walk downhill
    loop {
        let down = [ctx.mul(best, u), ctx.mul(best, u_inv)]
            .into_iter()
            .find(|&c| ctx.trace(c) < ctx.trace(best));
        match down {
            Some(c) => best = c,
            None => break,
        }
    }
    [ctx.mul(best, u), ctx.mul(best, u_inv)]
        .into_iter()
        .filter(|&c| ctx.trace(c) == ctx.trace(best))
        .fold(best, |a, c| if (c.x, c.y) < (a.x, a.y) { c } else { a })
}

/// Totally positive `m` with `N(m) <= norm_max` in the raw window, or one
/// canonical member per `<eps^2>`-orbit when `orbits` is set; ordered by
/// `(N(m), Tr(m), x, y)`.
pub fn enumerate_totally_positive(ctx: &FieldContext, norm_max: u64, orbits: bool) -> Vec<QuadInt> {
    assert!(norm_max >= 1, "norm_max must be at least 1");
    let disc = ctx.disc() as i128;
    let (t, _) = ctx.min_poly();
    let bound = 4 * norm_max as i128;
    let mut out = Vec::new();
    for tr in 1..=trace_window(ctx, norm_max) as i128 {
        // 4 N(m) = tr^2 - D y^2 must lie in (0, 4 norm_max]
        let y_max = arith::isqrt(((tr * tr - 1) / disc) as u128) as i128;
        for y in -y_max..=y_max {
            let four_n = tr * tr - disc * y * y;
            if four_n <= 0 || four_n > bound || (tr - t as i128 * y) % 2 != 0 {
                continue;
            }
            let m = QuadInt::new(((tr - t as i128 * y) / 2) as i64, y as i64);
            debug_assert!(ctx.is_totally_positive(m) && ctx.norm(m) as i128 * 4 == four_n);
            out.push(m);
        }
    }
    if orbits {
        out = out.into_iter().map(|m| canonical_orbit_rep(ctx, m)).collect();
    }
    out.sort_by(|a, b| ctx.sweep_order(a, b));
    out.dedup();
    out
}

/// Decomposition rows for every element of the sweep, computed in parallel.
pub fn table(ctx: &FieldContext, norm_max: u64, orbits: bool) -> Result<Vec<CoeffRow>> {
    enumerate_totally_positive(ctx, norm_max, orbits)
        .par_iter()
        .map(|&m| eisenstein::decompose(ctx, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> QuadInt {
        QuadInt::new(x, y)
    }

    /// Box scan with the same window, as an oracle.
    fn scan(ctx: &FieldContext, norm_max: u64) -> Vec<QuadInt> {
        let t_max = trace_window(ctx, norm_max);
        let mut v = Vec::new();
        for x in -60..=60 {
            for y in -60..=60 {
                let m = q(x, y);
                if ctx.is_totally_positive(m) && ctx.norm(m) as u64 <= norm_max && ctx.trace(m) <= t_max {
                    v.push(m);
                }
            }
        }
        v.sort_by(|a, b| ctx.sweep_order(a, b));
        v
    }

    #[test]
    fn matches_box_scan() {
        for d in [2, 3, 5, 13, 17] {
            let k = FieldContext::new(d).unwrap();
            for b in [1, 2, 7, 20] {
                assert_eq!(enumerate_totally_positive(&k, b, false), scan(&k, b), "d={d} B={b}");
            }
        }
    }

    #[test]
    fn small_windows() {
        let k2 = FieldContext::new(2).unwrap();
        let raw = enumerate_totally_positive(&k2, 2, false);
        assert_eq!(raw[0], q(1, 0));
        assert!(raw.contains(&q(2, 1)) && raw.contains(&q(2, -1)) && !raw.contains(&q(2, 0)));
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(enumerate_totally_positive(&k5, 1, true), vec![q(1, 0)]);
        // 2 + sqrt 3 is a totally positive non-square unit, so it is its own orbit
        let k3 = FieldContext::new(3).unwrap();
        assert_eq!(enumerate_totally_positive(&k3, 1, true), vec![q(1, 0), q(2, -1)]);
    }

    #[test]
    fn orbit_reps_are_stable() {
        let k = FieldContext::new(13).unwrap();
        let u = k.square(k.fundamental_unit());
        for m in enumerate_totally_positive(&k, 30, true) {
            assert_eq!(canonical_orbit_rep(&k, m), m);
            assert_eq!(canonical_orbit_rep(&k, k.mul(m, u)), m);
            assert_eq!(canonical_orbit_rep(&k, k.mul(m, k.conj(u))), m);
        }
    }

    #[test]
    fn table_rows_balance() {
        let k = FieldContext::new(5).unwrap();
        let rows = table(&k, 20, true).unwrap();
        assert!(rows.iter().all(|r| r.a_c == num_rational::BigRational::from_integer(0.into())));
        assert!(rows.windows(2).all(|w| k.sweep_order(&w[0].m, &w[1].m).is_lt()));
    }
}
