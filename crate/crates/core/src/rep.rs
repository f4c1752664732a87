//! Brute-force representation numbers `r_Q(m)` for `Q = x1^2 + x2^2 + x3^2 + x4^2`
//! over `O_K`, by bounded enumeration in both real embeddings.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::field::{FieldContext, FieldError, QuadInt};

/// Maximum number of witness tuples kept by [`count_representations`].
pub const WITNESS_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepResult {
    pub m: QuadInt,
    pub count: u64,
    /// `Some` only when witnesses were requested.
    pub witnesses: Option<Vec<[QuadInt; 4]>>,
    /// Set when more than [`WITNESS_CAP`] witnesses exist.
    pub truncated: bool,
}

/// Every `c` in `O_K` with `sigma_i(c)^2 <= sigma_i(m)` for both embeddings,
/// sorted by `|sigma_1(c)|` descending.
///
/// The `w`-coordinate range is exact (`b^2 d <= tr(m) + 2 sqrt N(m)`); the
/// rational coordinate range is taken from floating bounds widened by one on
/// each side, and every candidate is confirmed with exact arithmetic.
pub fn candidate_coordinates(ctx: &FieldContext, m: QuadInt) -> Result<Vec<QuadInt>, FieldError> {
    if !ctx.is_totally_positive(m) {
        return Err(FieldError::NotTotallyPositive(m));
    }
    Ok(candidates_unchecked(ctx, m))
}

fn candidates_unchecked(ctx: &FieldContext, m: QuadInt) -> Vec<QuadInt> {
    if m.is_zero() {
        return vec![QuadInt::ZERO];
    }
    let tr = ctx.trace(m) as i128;
    let nm = ctx.norm_wide(m);
    // (sigma_1(c) - sigma_2(c))^2 = b^2 d <= (sqrt s1 + sqrt s2)^2 = tr + 2 sqrt(N)
    let bound = tr + 2 * arith::ceil_sqrt(nm as u128) as i128;
    let b_max = arith::isqrt((bound / ctx.d() as i128) as u128) as i64;
    let (s1, s2) = ctx.embeddings(m);
    let (r1, r2) = (s1.max(0.0).sqrt(), s2.max(0.0).sqrt());
    let [w1, w2] = ctx.omega_real();
    let mut out = Vec::new();
    for b in -b_max..=b_max {
        let bf = b as f64;
        // |a + b w_i| <= r_i
        let lo = (-r1 - bf * w1).max(-r2 - bf * w2);
        let hi = (r1 - bf * w1).min(r2 - bf * w2);
        if lo > hi + 2.0 {
            continue;
        }
        for a in (lo.floor() as i64 - 1)..=(hi.ceil() as i64 + 1) {
            let c = QuadInt::new(a, b);
            if ctx.is_totally_nonnegative(m - ctx.square(c)) {
                out.push(c);
            }
        }
    }
    sort_for_pruning(ctx, &mut out);
    out
}

fn sort_for_pruning(ctx: &FieldContext, cands: &mut [QuadInt]) {
    cands.sort_by(|a, b| {
        let (ea, eb) = (ctx.embeddings(*a).0.abs(), ctx.embeddings(*b).0.abs());
        eb.total_cmp(&ea).then(a.cmp(b))
    });
}

/// Number of pairs `(x3, x4)` from `cands` with `x3^2 + x4^2 = residual`.
fn count_pairs(ctx: &FieldContext, residual: QuadInt, cands: &[QuadInt]) -> u64 {
    let mut total = 0;
    for &c in cands {
        let rest = residual - ctx.square(c);
        if !ctx.is_totally_nonnegative(rest) {
            continue;
        }
        if rest.is_zero() {
            total += 1;
        } else if ctx.sqrt_exact(rest).is_some() {
            total += 2;
        }
    }
    total
}

fn filter_for(ctx: &FieldContext, residual: QuadInt, cands: &[QuadInt]) -> Vec<QuadInt> {
    cands
        .iter()
        .copied()
        .filter(|&c| ctx.is_totally_nonnegative(residual - ctx.square(c)))
        .collect()
}

fn count_from(ctx: &FieldContext, residual: QuadInt, cands: &[QuadInt], depth: usize) -> u64 {
    if depth == 2 {
        return count_pairs(ctx, residual, cands);
    }
    let mut total = 0;
    for &c in cands {
        let rest = residual - ctx.square(c);
        if !ctx.is_totally_nonnegative(rest) {
            continue;
        }
        let next = filter_for(ctx, rest, cands);
        total += count_from(ctx, rest, &next, depth - 1);
    }
    total
}

fn collect_from(
    ctx: &FieldContext,
    residual: QuadInt,
    cands: &[QuadInt],
    prefix: &mut Vec<QuadInt>,
    sink: &mut Vec<[QuadInt; 4]>,
    count: &mut u64,
) {
    if prefix.len() == 3 {
        // the last coordinate is a square root of the residual
        let roots: Vec<QuadInt> = match ctx.sqrt_exact(residual) {
            Some(r) if r.is_zero() => vec![r],
            Some(r) => vec![r, -r],
            None => Vec::new(),
        };
        for r in roots {
            *count += 1;
            if sink.len() < WITNESS_CAP {
                sink.push([prefix[0], prefix[1], prefix[2], r]);
            }
        }
        return;
    }
    for &c in cands {
        let rest = residual - ctx.square(c);
        if !ctx.is_totally_nonnegative(rest) {
            continue;
        }
        let next = filter_for(ctx, rest, cands);
        prefix.push(c);
        collect_from(ctx, rest, &next, prefix, sink, count);
        prefix.pop();
    }
}

/// `r_Q(m)`, optionally with (capped) explicit solutions.
pub fn count_representations(
    ctx: &FieldContext,
    m: QuadInt,
    collect_witnesses: bool,
) -> Result<RepResult, FieldError> {
    if m.is_zero() {
        return Ok(RepResult {
            m,
            count: 1,
            witnesses: collect_witnesses.then(|| vec![[QuadInt::ZERO; 4]]),
            truncated: false,
        });
    }
    let cands = candidate_coordinates(ctx, m)?;
    if collect_witnesses {
        let mut sink = Vec::new();
        let mut count = 0;
        collect_from(ctx, m, &cands, &mut Vec::with_capacity(4), &mut sink, &mut count);
        return Ok(RepResult { m, count, truncated: count as usize > sink.len(), witnesses: Some(sink) });
    }
    let count = cands
        .par_iter()
        .map(|&c| {
            let rest = m - ctx.square(c);
            let next = filter_for(ctx, rest, &cands);
            count_from(ctx, rest, &next, 3)
        })
        .sum();
    Ok(RepResult { m, count, witnesses: None, truncated: false })
}

/// Shorthand for the bare count.
pub fn representation_number(ctx: &FieldContext, m: QuadInt) -> Result<u64, FieldError> {
    Ok(count_representations(ctx, m, false)?.count)
}

/// Jacobi's formula `8 * sum_{d | n, 4 !| d} d` for the sum of four squares over `Z`.
pub fn jacobi_count(n: u64) -> u64 {
    assert!(n >= 1, "jacobi_count needs n >= 1");
    let mut sum = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            if d % 4 != 0 {
                sum += d;
            }
            if e != d && !e.is_multiple_of(4) {
                sum += e;
            }
        }
        d += 1;
    }
    8 * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> QuadInt {
        QuadInt::new(x, y)
    }

    /// Box scan oracle for candidate sets.
    fn scan(ctx: &FieldContext, m: QuadInt, r: i64) -> Vec<QuadInt> {
        let mut v = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                let c = q(a, b);
                let (s1, s2) = ctx.embeddings(c);
                let (m1, m2) = ctx.embeddings(m);
                if s1 * s1 <= m1 + 1e-9 && s2 * s2 <= m2 + 1e-9 {
                    v.push(c);
                }
            }
        }
        v.sort();
        v
    }

    #[test]
    fn candidate_examples() {
        let k2 = FieldContext::new(2).unwrap();
        let mut c = candidate_coordinates(&k2, q(1, 0)).unwrap();
        c.sort();
        assert_eq!(c, vec![q(-1, 0), q(0, 0), q(1, 0)]);
        let mut c = candidate_coordinates(&k2, q(2, 0)).unwrap();
        c.sort();
        assert_eq!(c, scan(&k2, q(2, 0), 3));
        assert_eq!(c, vec![q(-1, 0), q(0, -1), q(0, 0), q(0, 1), q(1, 0)]);

        let k5 = FieldContext::new(5).unwrap();
        let c = candidate_coordinates(&k5, q(3, 1)).unwrap();
        assert!(c.contains(&q(0, 1)) && c.contains(&q(0, -1)));
        assert!(candidate_coordinates(&k5, q(0, 1)).is_err());
    }

    #[test]
    fn candidates_match_box_scan() {
        for d in [2, 3, 5, 13, 17] {
            let k = FieldContext::new(d).unwrap();
            for x in 1..12 {
                for y in -6..6 {
                    let m = q(x, y);
                    if !k.is_totally_positive(m) {
                        continue;
                    }
                    let mut c = candidate_coordinates(&k, m).unwrap();
                    c.sort();
                    assert_eq!(c, scan(&k, m, 15), "d={d} m={m}");
                    assert!(c.contains(&QuadInt::ZERO));
                    assert!(c.iter().all(|v| c.contains(&-*v)));
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        let k17 = FieldContext::new(17).unwrap();
        assert_eq!(representation_number(&k17, q(1, 0)).unwrap(), 8);
        assert_eq!(representation_number(&k17, q(2, 1)).unwrap(), 0);
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(representation_number(&k2, q(2, 0)).unwrap(), 32);
        assert_eq!(representation_number(&k2, QuadInt::ZERO).unwrap(), 1);
    }

    #[test]
    fn witnesses_are_solutions() {
        let k2 = FieldContext::new(2).unwrap();
        let m = q(5, 2);
        let r = count_representations(&k2, m, true).unwrap();
        let w = r.witnesses.as_ref().unwrap();
        assert_eq!(w.len() as u64, r.count);
        assert!(!r.truncated);
        for t in w {
            let s = t.iter().fold(QuadInt::ZERO, |acc, &c| acc + k2.square(c));
            assert_eq!(s, m);
        }
        assert_eq!(r.count, representation_number(&k2, m).unwrap());
    }

    #[test]
    fn witness_cap_sets_truncation() {
        let k5 = FieldContext::new(5).unwrap();
        let m = q(60, 0);
        let r = count_representations(&k5, m, true).unwrap();
        assert!(r.count as usize > WITNESS_CAP);
        assert!(r.truncated);
        assert_eq!(r.witnesses.unwrap().len(), WITNESS_CAP);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_count(1), 8);
        assert_eq!(jacobi_count(2), 24);
        assert_eq!(jacobi_count(4), 24);
        assert_eq!(jacobi_count(3), 32);
    }
}
