//! `P`-adic local densities of the sum of four squares.
//!
//! The generic engine counts solutions of `Q(x) = m` in `(O_K / P^v)^4`,
//! splits them into Good type (some coordinate a unit at `P`) and Zero type
//! (all coordinates in `P`), and assembles
//!
//! ```text
//! beta_P(m) = r^Good_{P^k0}(m) / N^{3 k0} + [ord_P(m) >= 2] N^{-2} beta_P(m / pi^2)
//! ```
//!
//! with `k0 = 2 ord_P(2) + 1`. Closed forms per splitting class are provided
//! separately by [`density_closed_form`] and are checked against the engine.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldContext, FieldError, IdealBasis, PrimeFactor, QuadInt, SplitType};
use crate::rational::{int, inv_pow, inverse_power_sum, rat, uint, Rational};

/// Maximum number of 4-tuples `N(P)^{4v}` a residue count may range over.
pub const ENUMERATION_BUDGET: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(
        "counting modulo {prime}^{level} ranges over {tuples} tuples, above the budget of {budget}; \
         use the closed-form densities instead"
    )]
    BudgetExceeded { prime: String, level: u32, tuples: String, budget: u64 },
    #[error("the local density of 0 is undefined")]
    ZeroElement,
    #[error("level must be at least 1")]
    LevelTooSmall,
}

/// `O_K / P^v` with coset representatives `i + j w`, `0 <= i < a`, `0 <= j < c`
/// taken from the HNF rows `(a, 0), (b, c)` of `P^v`.
#[derive(Debug, Clone)]
pub struct ResidueRing<'a> {
    ctx: &'a FieldContext,
    prime: &'a PrimeFactor,
    level: u32,
    modulus: IdealBasis,
}

impl<'a> ResidueRing<'a> {
    pub fn new(ctx: &'a FieldContext, prime: &'a PrimeFactor, level: u32) -> Self {
        let modulus = prime.ideal.pow(ctx, level);
        ResidueRing { ctx, prime, level, modulus }
    }

    pub fn prime(&self) -> &PrimeFactor {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> &IdealBasis {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        self.modulus.norm() as usize
    }

    /// Representatives in index order.
    pub fn reps(&self) -> impl Iterator<Item = QuadInt> + '_ {
        let (a, _, c) = self.modulus.dims();
        (0..c).flat_map(move |j| (0..a).map(move |i| QuadInt::new(i, j)))
    }

    pub fn index_of(&self, v: QuadInt) -> usize {
        self.modulus.index_of(v)
    }

    pub fn reduce(&self, v: QuadInt) -> QuadInt {
        self.modulus.reduce(v)
    }

    fn rep_at(&self, idx: usize) -> QuadInt {
        let (a, _, _) = self.modulus.dims();
        QuadInt::new(idx as i64 % a, idx as i64 / a)
    }

    fn add_index(&self, i: usize, j: usize) -> usize {
        let (a, b, c) = self.modulus.dims();
        let (ri, rj) = (self.rep_at(i), self.rep_at(j));
        let (mut x, mut y) = (ri.x + rj.x, ri.y + rj.y);
        if y >= c {
            y -= c;
            x -= b;
        }
        (x.rem_euclid(a) + a * y) as usize
    }

    fn sub_index(&self, i: usize, j: usize) -> usize {
        self.index_of(self.rep_at(i) - self.rep_at(j))
    }

    fn convolve(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let mut h = vec![0u64; f.len()];
        let g_support: Vec<usize> = (0..g.len()).filter(|&j| g[j] != 0).collect();
        for (i, &fi) in f.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for &j in &g_support {
                h[self.add_index(i, j)] += fi * g[j];
            }
        }
        h
    }

    /// `sum_r f(r) g(target - r)`.
    fn pair_at(&self, f: &[u64], g: &[u64], target: usize) -> u64 {
        (0..f.len()).filter(|&i| f[i] != 0).map(|i| f[i] * g[self.sub_index(target, i)]).sum()
    }

    /// Exact Good/Zero/total solution counts of `Q(x) = m` modulo `P^v`.
    fn typed_counts(&self, m: QuadInt) -> TypedCount {
        let size = self.size();
        let (mut all, mut unit, mut zero) = (vec![0u64; size], vec![0u64; size], vec![0u64; size]);
        for x in self.reps() {
            let r = self.index_of(self.ctx.square(x));
            all[r] += 1;
            if self.prime.ideal.contains(x) {
                zero[r] += 1;
            } else {
                unit[r] += 1;
            }
        }
        let target = self.index_of(m);
        let all2 = self.convolve(&all, &all);
        let all3 = self.convolve(&all2, &all);
        let zero2 = self.convolve(&zero, &zero);
        let zero3 = self.convolve(&zero2, &zero);
        let zero_unit = self.convolve(&zero, &unit);
        let zero2_unit = self.convolve(&zero2, &unit);

        let total = self.pair_at(&all2, &all2, target);
        let zero_count = self.pair_at(&zero2, &zero2, target);
        // Good tuples, classified by the position of the first unit coordinate
        let good = self.pair_at(&unit, &all3, target)
            + self.pair_at(&zero_unit, &all2, target)
            + self.pair_at(&zero2_unit, &all, target)
            + self.pair_at(&zero3, &unit, target);
        TypedCount { good, zero: zero_count, total, level: self.level }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypedCount {
    pub good: u64,
    pub zero: u64,
    pub total: u64,
    pub level: u32,
}

impl TypedCount {
    /// Tuples that are neither Good nor Zero; always 0 for a diagonal unit form.
    pub fn bad_residual(&self) -> i128 {
        self.total as i128 - self.good as i128 - self.zero as i128
    }
}

fn check_budget(prime: &PrimeFactor, level: u32) -> Result<(), DensityError> {
    let tuples = (prime.norm() as u128).checked_pow(4 * level);
    match tuples {
        Some(t) if t <= ENUMERATION_BUDGET as u128 => Ok(()),
        _ => Err(DensityError::BudgetExceeded {
            prime: prime.label(),
            level,
            tuples: match tuples {
                Some(t) => t.to_string(),
                None => format!("{}^{}", prime.norm(), 4 * level),
            },
            budget: ENUMERATION_BUDGET,
        }),
    }
}

/// Exhaustive Good/Zero classification of the solutions of `Q(x) = m (mod P^v)`.
pub fn count_typed(
    ctx: &FieldContext,
    prime: &PrimeFactor,
    level: u32,
    m: QuadInt,
) -> Result<TypedCount, DensityError> {
    if level == 0 {
        return Err(DensityError::LevelTooSmall);
    }
    check_budget(prime, level)?;
    Ok(ResidueRing::new(ctx, prime, level).typed_counts(m))
}

/// `lim r^Good_{P^v}(m) / N^{3v}`, evaluated at the stable level `2 ord_P(2) + 1`.
pub fn good_density(ctx: &FieldContext, prime: &PrimeFactor, m: QuadInt) -> Result<Rational, DensityError> {
    let k0 = prime.stable_good_level();
    let counts = count_typed(ctx, prime, k0, m)?;
    Ok(uint(counts.good) * inv_pow(prime.norm(), 3 * k0))
}

/// An element congruent, up to the square of a `P`-unit, to `m / pi^2` in `K_P`.
///
/// With `s = conj(pi)` and `N(pi) = +-p^f c`, `m s^2 / p^{2f} = (m / pi^2) c^2`
/// is integral whenever `ord_P(m) >= 2`.
pub fn divide_by_uniformizer_squared(ctx: &FieldContext, prime: &PrimeFactor, m: QuadInt) -> QuadInt {
    let s = ctx.conj(prime.uniformizer);
    let scaled = ctx.mul(m, ctx.square(s));
    let q = prime.p.pow(2 * prime.f);
    ctx.div_rational(scaled, q).expect("m must lie in P^2")
}

/// Reduce coordinates modulo `p^e` without changing `m` modulo `P^{e}`.
fn shrink(prime: &PrimeFactor, m: QuadInt, keep: u32) -> QuadInt {
    let Some(modulus) = prime.p.checked_pow(keep) else {
        return m;
    };
    let r = QuadInt::new(m.x.rem_euclid(modulus), m.y.rem_euclid(modulus));
    if r.is_zero() {
        QuadInt::new(modulus, 0)
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityResult {
    #[serde(with = "crate::rational::as_string")]
    pub beta: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub good_part: Rational,
    /// `N^{-2j} r^Good(m / pi^{2j}) / N^{3 k0}` for `j = 1, 2, ...`
    #[serde(with = "crate::rational::as_string::vec")]
    pub zero_chain: Vec<Rational>,
    /// Level `v` from which `r_{P^v}(m) / N^{3v}` equals `beta`.
    pub stable_level: u32,
}

/// `beta_P(m)` via the Good/Zero reduction.
pub fn density(ctx: &FieldContext, prime: &PrimeFactor, m: QuadInt) -> Result<DensityResult, DensityError> {
    if m.is_zero() {
        return Err(DensityError::ZeroElement);
    }
    let k0 = prime.stable_good_level();
    let nrm = prime.norm();
    let good_part = good_density(ctx, prime, m)?;
    let mut zero_chain = Vec::new();
    let mut current = m;
    let mut ord = ctx.ord_at_nonzero(current, prime);
    let mut steps = 0u32;
    while ord >= 2 {
        steps += 1;
        // p^{ord + k0 + 1} lies in P^{ord + k0 + 1}, deep enough to keep beta and ord
        current = shrink(prime, divide_by_uniformizer_squared(ctx, prime, current), ord + k0 + 1);
        ord = ctx.ord_at_nonzero(current, prime);
        zero_chain.push(inv_pow(nrm, 2 * steps) * good_density(ctx, prime, current)?);
    }
    let beta = zero_chain.iter().fold(good_part.clone(), |acc, z| acc + z);
    Ok(DensityResult { beta, good_part, zero_chain, stable_level: 2 * steps + k0.max(ord + 1) })
}

/// Outcome of a closed-form density evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Density(Rational),
    /// `m` is not represented over the completion at this prime (`beta = 0`).
    LocalObstruction,
}

impl ClosedForm {
    pub fn beta(&self) -> Rational {
        match self {
            ClosedForm::Density(b) => b.clone(),
            ClosedForm::LocalObstruction => Rational::zero(),
        }
    }
}

/// Unit residues modulo `P^5` that are sums of four squares at a ramified dyadic prime.
pub fn represented_unit_residues(ctx: &FieldContext, prime: &PrimeFactor) -> Result<Vec<QuadInt>, DensityError> {
    let ring = ResidueRing::new(ctx, prime, prime.stable_good_level());
    check_budget(prime, ring.level())?;
    Ok(ring
        .reps()
        .filter(|&r| !prime.ideal.contains(r))
        .filter(|&r| ring.typed_counts(r).good > 0)
        .collect())
}

/// `beta_P(m)` from the per-class closed formulas.
///
/// * odd `P`: `(1 - N^-2) sum_{i=0}^{ord} N^-i`
/// * `(2)` inert (`D = 5 mod 8`), `P | 2` split (`D = 1 mod 8`) and `P | 2`
///   ramified (`D = 0 mod 4`) each by ord-parity case.
///
/// Ramified units are checked against the represented residues modulo `P^5`
/// from [`represented_unit_residues`].
pub fn density_closed_form(ctx: &FieldContext, prime: &PrimeFactor, m: QuadInt) -> Result<ClosedForm, DensityError> {
    if m.is_zero() {
        return Err(DensityError::ZeroElement);
    }
    let ord = ctx.ord_at_nonzero(m, prime);
    let n = (ord / 2) as i64;
    let odd = ord % 2 == 1;
    if !prime.is_dyadic() {
        let nrm = prime.norm();
        let nrm2 = uint(nrm * nrm);
        let factor = (nrm2.clone() - Rational::one()) / nrm2;
        return Ok(ClosedForm::Density(factor * inverse_power_sum(nrm, 0, ord as i64)));
    }
    let value = match prime.split_type {
        SplitType::Split => match ord {
            0 => Rational::one(),
            _ if odd => rat(3, 1) * inv_pow(2, 2 * n as u32 + 1),
            _ => rat(3, 1) * inv_pow(2, 2 * n as u32),
        },
        SplitType::Inert => match ord {
            0 => Rational::one(),
            _ if odd => rat(15, 8) * inverse_power_sum(16, 0, n - 1) + rat(3, 1) * inv_pow(4, 2 * n as u32 + 1),
            _ => rat(15, 8) * inverse_power_sum(16, 0, n - 2) + rat(27, 1) * inv_pow(4, 2 * n as u32),
        },
        SplitType::Ramified => match ord {
            0 => {
                let residue = ResidueRing::new(ctx, prime, prime.stable_good_level()).reduce(m);
                if !represented_unit_residues(ctx, prime)?.contains(&residue) {
                    return Ok(ClosedForm::LocalObstruction);
                }
                int(2)
            }
            1 => return Ok(ClosedForm::LocalObstruction),
            2 => int(2),
            _ if odd => rat(9, 4) * inverse_power_sum(4, 0, n - 2) + rat(3, 1) * inv_pow(2, 2 * (n as u32 - 1) + 1),
            _ => {
                rat(9, 4) * inverse_power_sum(4, 0, n - 3)
                    + rat(7, 4) * inv_pow(4, n as u32 - 2)
                    + inv_pow(2, 2 * n as u32 - 3)
            }
        },
    };
    Ok(ClosedForm::Density(value))
}

/// `beta_P(m) > 0` at every prime above 2 (odd primes never obstruct).
pub fn is_locally_represented(ctx: &FieldContext, m: QuadInt) -> Result<bool, DensityError> {
    if !ctx.is_totally_positive(m) {
        return Err(FieldError::NotTotallyPositive(m).into());
    }
    for prime in ctx.split_prime(2)? {
        if density(ctx, &prime, m)?.beta.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
