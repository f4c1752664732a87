//! Exact arithmetic in the ring of integers `O_K` of `K = Q(sqrt d)`.
//!
//! Elements are stored in the integral basis `{1, w}` where `w = sqrt d` when
//! `d = 2, 3 (mod 4)` and `w = (1 + sqrt d)/2` when `d = 1 (mod 4)`. In both
//! cases `w` is a root of `X^2 - t X - n` with `(t, n)` kept on the context.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("d = {0} must be greater than 1")]
    TooSmall(i64),
    #[error("d = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} is not a rational prime")]
    NotPrime(i64),
    #[error("cannot parse element literal {0:?}: expected \"a+b*w\"")]
    Parse(String),
    #[error("the valuation of 0 is undefined")]
    ZeroValuation,
    #[error("{0} is not totally positive")]
    NotTotallyPositive(QuadInt),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// `w = sqrt d`
    Sqrt,
    /// `w = (1 + sqrt d)/2`
    Half,
}

/// An element `x + y*w` of `O_K`.
///
/// The value carries no field; arithmetic that depends on the defining
/// polynomial of `w` goes through [`FieldContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadInt {
    pub x: i64,
    pub y: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { x: 0, y: 0 };
    pub const ONE: QuadInt = QuadInt { x: 1, y: 0 };
    pub const W: QuadInt = QuadInt { x: 0, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        QuadInt { x, y }
    }

    pub const fn rational(x: i64) -> Self {
        QuadInt { x, y: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.x, -self.y)
    }
}

impl Mul<i64> for QuadInt {
    type Output = QuadInt;
    fn mul(self, k: i64) -> QuadInt {
        QuadInt::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.y {
            0 => write!(f, "{}", self.x),
            y if y < 0 => write!(f, "{}-{}*w", self.x, -y),
            y => write!(f, "{}+{}*w", self.x, y),
        }
    }
}

impl FromStr for QuadInt {
    type Err = FieldError;

    /// Parses `"a+b*w"`, `"a-b*w"`, `"a"`, `"b*w"`, `"w"`, `"2+w"` and the like.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let (mut x, mut y) = (0i64, 0i64);
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'+') => (false, &term[1..]),
                Some(b'-') => (true, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff, is_w) = if let Some(c) = body.strip_suffix("*w") {
                (c.parse::<i64>().map_err(|_| err())?, true)
            } else if body == "w" {
                (1, true)
            } else if let Some(c) = body.strip_suffix('w') {
                (c.parse::<i64>().map_err(|_| err())?, true)
            } else {
                (body.parse::<i64>().map_err(|_| err())?, false)
            };
            let coeff = if neg { -coeff } else { coeff };
            if is_w {
                y += coeff;
            } else {
                x += coeff;
            }
        }
        Ok(QuadInt::new(x, y))
    }
}

impl Serialize for QuadInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("QuadInt coordinate overflow")
}

/// The field `K = Q(sqrt d)` together with its integral basis data.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldContext {
    d: i64,
    disc: i64,
    basis: BasisKind,
    /// `w^2 = t*w + n`
    t: i64,
    n: i64,
    omega_real: [f64; 2],
}

impl FieldContext {
    pub fn new(d: i64) -> Result<Self, FieldError> {
        if d <= 1 {
            return Err(FieldError::TooSmall(d));
        }
        if !arith::is_squarefree(d as u64) {
            return Err(FieldError::NotSquarefree(d));
        }
        let root = (d as f64).sqrt();
        let ctx = if d % 4 == 1 {
            FieldContext {
                d,
                disc: d,
                basis: BasisKind::Half,
                t: 1,
                n: (d - 1) / 4,
                omega_real: [(1.0 + root) / 2.0, (1.0 - root) / 2.0],
            }
        } else {
            FieldContext {
                d,
                disc: 4 * d,
                basis: BasisKind::Sqrt,
                t: 0,
                n: d,
                omega_real: [root, -root],
            }
        };
        Ok(ctx)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Fundamental discriminant `D`; the conductor of `chi_D`.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn basis_kind(&self) -> BasisKind {
        self.basis
    }

    /// `(t, n)` with `w^2 = t*w + n`.
    pub fn min_poly(&self) -> (i64, i64) {
        (self.t, self.n)
    }

    /// The two real images `(sigma_1(w), sigma_2(w))` with `sigma_1(w) > sigma_2(w)`.
    pub fn omega_real(&self) -> [f64; 2] {
        self.omega_real
    }

    /// Human-readable description of `w` for this field.
    pub fn omega_description(&self) -> String {
        match self.basis {
            BasisKind::Sqrt => format!("w = sqrt({})", self.d),
            BasisKind::Half => format!("w = (1+sqrt({}))/2", self.d),
        }
    }

    pub fn character(&self) -> Character {
        Character { disc: self.disc }
    }

    pub fn mul(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        let (ax, ay, bx, by) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
        let (t, n) = (self.t as i128, self.n as i128);
        let yy = ay * by;
        QuadInt::new(narrow(ax * bx + yy * n), narrow(ax * by + ay * bx + yy * t))
    }

    pub fn square(&self, a: QuadInt) -> QuadInt {
        self.mul(a, a)
    }

    pub fn pow(&self, a: QuadInt, k: u32) -> QuadInt {
        (0..k).fold(QuadInt::ONE, |acc, _| self.mul(acc, a))
    }

    pub fn norm(&self, a: QuadInt) -> i64 {
        narrow(self.norm_wide(a))
    }

    pub(crate) fn norm_wide(&self, a: QuadInt) -> i128 {
        let (x, y) = (a.x as i128, a.y as i128);
        x * x + self.t as i128 * x * y - self.n as i128 * y * y
    }

    pub fn trace(&self, a: QuadInt) -> i64 {
        2 * a.x + self.t * a.y
    }

    pub fn conj(&self, a: QuadInt) -> QuadInt {
        QuadInt::new(a.x + self.t * a.y, -a.y)
    }

    /// `(sigma_1(a), sigma_2(a))` as floating-point reals.
    pub fn embeddings(&self, a: QuadInt) -> (f64, f64) {
        let (x, y) = (a.x as f64, a.y as f64);
        (x + y * self.omega_real[0], x + y * self.omega_real[1])
    }

    pub fn is_totally_positive(&self, a: QuadInt) -> bool {
        !a.is_zero() && self.trace(a) > 0 && self.norm_wide(a) > 0
    }

    /// Both embeddings `>= 0`, i.e. `a = 0` or `a` totally positive.
    pub fn is_totally_nonnegative(&self, a: QuadInt) -> bool {
        self.trace(a) >= 0 && self.norm_wide(a) >= 0
    }

    /// Exact division by a rational integer, if it divides both coordinates.
    pub fn div_rational(&self, a: QuadInt, k: i64) -> Option<QuadInt> {
        (a.x % k == 0 && a.y % k == 0).then(|| QuadInt::new(a.x / k, a.y / k))
    }

    /// Exact division `a / b` in `O_K`, if the quotient is integral.
    pub fn div_exact(&self, a: QuadInt, b: QuadInt) -> Option<QuadInt> {
        let nb = self.norm(b);
        if nb == 0 {
            return None;
        }
        self.div_rational(self.mul(a, self.conj(b)), nb)
    }

    /// An exact square root of `a` in `O_K`, if `a` is a square.
    pub fn sqrt_exact(&self, a: QuadInt) -> Option<QuadInt> {
        if a.is_zero() {
            return Some(QuadInt::ZERO);
        }
        if !self.is_totally_positive(a) {
            return None;
        }
        let (s1, s2) = self.embeddings(a);
        let (r1, r2) = (s1.max(0.0).sqrt(), s2.max(0.0).sqrt());
        let gap = self.omega_real[0] - self.omega_real[1];
        for (e1, e2) in [(r1, r2), (r1, -r2)] {
            let y0 = ((e1 - e2) / gap).round() as i64;
            let x0 = (e1 - y0 as f64 * self.omega_real[0]).round() as i64;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let c = QuadInt::new(x0 + dx, y0 + dy);
                    if self.square(c) == a {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// The fundamental unit `eps > 1` of `O_K`.
    pub fn fundamental_unit(&self) -> QuadInt {
        // smallest y >= 1 admitting x with x^2 + t x y - n y^2 = +-1
        let (t, n) = (self.t as i128, self.n as i128);
        let mut y: i128 = 1;
        loop {
            for target in [-1i128, 1] {
                // x = (-t y + sqrt(t^2 y^2 + 4(n y^2 + target))) / 2
                let disc = t * t * y * y + 4 * (n * y * y + target);
                if let Some(s) = arith::exact_sqrt(disc) {
                    let num = -t * y + s;
                    if num % 2 == 0 {
                        let u = QuadInt::new(narrow(num / 2), narrow(y));
                        if self.embeddings(u).0 > 1.0 {
                            return u;
                        }
                    }
                }
            }
            y += 1;
        }
    }

    /// Splitting of the rational prime `p` in `O_K`.
    ///
    /// Split primes are labelled by the ascending order of the roots of the
    /// minimal polynomial of `w` modulo `p`: index 0 is `(p, w - r_small)`.
    pub fn split_prime(&self, p: i64) -> Result<Vec<PrimeFactor>, FieldError> {
        if p < 2 || !arith::is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        let symbol = arith::kronecker(self.disc, p);
        if symbol == -1 {
            let ideal = IdealBasis::from_generators(self, &[QuadInt::rational(p)]);
            return Ok(vec![PrimeFactor {
                p,
                split_type: SplitType::Inert,
                e: 1,
                f: 2,
                index: 0,
                ideal,
                uniformizer: QuadInt::rational(p),
            }]);
        }
        let roots = self.min_poly_roots_mod(p);
        let split_type = if symbol == 1 { SplitType::Split } else { SplitType::Ramified };
        debug_assert_eq!(roots.len(), if symbol == 1 { 2 } else { 1 });
        let ideals: Vec<IdealBasis> = roots
            .iter()
            .map(|&r| IdealBasis::from_generators(self, &[QuadInt::rational(p), QuadInt::new(-r, 1)]))
            .collect();
        let mut out = Vec::with_capacity(roots.len());
        for (i, (&r, ideal)) in roots.iter().zip(&ideals).enumerate() {
            let square = ideal.mul(self, ideal);
            let others: Vec<&IdealBasis> =
                ideals.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            let uniformizer = (0..=2)
                .map(|k| QuadInt::new(-r + k * p, 1))
                .find(|&c| {
                    ideal.contains(c) && !square.contains(c) && others.iter().all(|q| !q.contains(c))
                })
                .expect("a uniformizer exists among w - r + k p");
            out.push(PrimeFactor {
                p,
                split_type,
                e: if split_type == SplitType::Ramified { 2 } else { 1 },
                f: 1,
                index: i as u8,
                ideal: ideal.clone(),
                uniformizer,
            });
        }
        Ok(out)
    }

    /// Roots in `[0, p)` of `X^2 - t X - n` modulo `p`, ascending, without multiplicity.
    fn min_poly_roots_mod(&self, p: i64) -> Vec<i64> {
        let (t, n) = (self.t as i128, self.n as i128);
        let p128 = p as i128;
        let eval = |r: i128| (r * r - t * r - n).rem_euclid(p128) == 0;
        if p == 2 {
            return (0..2).filter(|&r| eval(r as i128)).collect();
        }
        // roots are (t +- sqrt(t^2 + 4n)) / 2
        let disc = t * t + 4 * n;
        let Some(s) = arith::sqrt_mod(disc, p as u64) else {
            return Vec::new();
        };
        let inv2 = (p128 + 1) / 2;
        let mut roots: Vec<i64> = [(t + s as i128) * inv2, (t - s as i128) * inv2]
            .iter()
            .map(|v| v.rem_euclid(p128) as i64)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        debug_assert!(roots.iter().all(|&r| eval(r as i128)));
        roots
    }

    /// Largest `v` with `m` in `P^v`.
    pub fn ord_at(&self, m: QuadInt, prime: &PrimeFactor) -> Result<u32, FieldError> {
        if m.is_zero() {
            return Err(FieldError::ZeroValuation);
        }
        Ok(self.ord_at_nonzero(m, prime))
    }

    pub(crate) fn ord_at_nonzero(&self, m: QuadInt, prime: &PrimeFactor) -> u32 {
        if prime.split_type == SplitType::Inert {
            let v = |c: i64| if c == 0 { u32::MAX } else { arith::valuation(c as i128, prime.p as i128) };
            return v(m.x).min(v(m.y));
        }
        let mut v = 0;
        let mut power = prime.ideal.clone();
        while power.contains(m) {
            v += 1;
            power = power.mul(self, &prime.ideal);
        }
        v
    }

    /// Prime-ideal factorization of `(m)`, ordered by rational prime then label.
    pub fn factor(&self, m: QuadInt) -> Result<Vec<(PrimeFactor, u32)>, FieldError> {
        if m.is_zero() {
            return Err(FieldError::ZeroValuation);
        }
        let norm = self.norm_wide(m).unsigned_abs() as u64;
        let mut out = Vec::new();
        for (p, _) in arith::factor(norm) {
            for prime in self.split_prime(p as i64)? {
                let v = self.ord_at_nonzero(m, &prime);
                if v > 0 {
                    out.push((prime, v));
                }
            }
        }
        Ok(out)
    }

    /// Norms of the ideal divisors of `(m)` passing `filter`, as
    /// `(norm, multiplicity)` pairs in ascending order of norm.
    pub fn divisor_ideal_norms(
        &self,
        m: QuadInt,
        filter: DivisorFilter,
    ) -> Result<Vec<(u64, u32)>, FieldError> {
        let factorization = self.factor(m)?;
        let required = |prime: &PrimeFactor| match filter {
            DivisorFilter::DivisibleBy2 => prime.e,
            DivisorFilter::DivisibleBy4 => 2 * prime.e,
            _ => 0,
        };
        // (2) | d or (4) | d forces every dyadic prime into (m)
        if matches!(filter, DivisorFilter::DivisibleBy2 | DivisorFilter::DivisibleBy4) {
            for two in self.split_prime(2)? {
                let k = factorization.iter().find(|(q, _)| *q == two).map_or(0, |(_, k)| *k);
                if k < required(&two) {
                    return Ok(Vec::new());
                }
            }
        }
        let mut norms: Vec<u64> = vec![1];
        for (prime, k) in &factorization {
            let (lo, hi) = match (prime.p, filter) {
                (2, DivisorFilter::CoprimeTo2) => (0, 0),
                (2, _) => (required(prime), *k),
                _ => (0, *k),
            };
            let np = prime.norm();
            norms = norms
                .iter()
                .flat_map(|&existing| (lo..=hi).map(move |j| existing * np.pow(j)))
                .collect();
        }
        norms.sort_unstable();
        let mut out: Vec<(u64, u32)> = Vec::new();
        for nrm in norms {
            match out.last_mut() {
                Some((last, count)) if *last == nrm => *count += 1,
                _ => out.push((nrm, 1)),
            }
        }
        Ok(out)
    }

    /// `sum N(d)` over ideal divisors `d | (m)` passing `filter`.
    pub fn divisor_norm_sum(&self, m: QuadInt, filter: DivisorFilter) -> Result<u64, FieldError> {
        Ok(self
            .divisor_ideal_norms(m, filter)?
            .iter()
            .map(|&(n, mult)| n * mult as u64)
            .sum())
    }

    /// Ordering key used by sweeps and tables: `(N(m), trace(m), x, y)`.
    pub fn sweep_order(&self, a: &QuadInt, b: &QuadInt) -> Ordering {
        (self.norm_wide(*a), self.trace(*a), a.x, a.y).cmp(&(self.norm_wide(*b), self.trace(*b), b.x, b.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorFilter {
    All,
    CoprimeTo2,
    DivisibleBy2,
    DivisibleBy4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal of `O_K` above a rational prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactor {
    pub p: i64,
    pub split_type: SplitType,
    /// ramification index
    pub e: u32,
    /// residue degree
    pub f: u32,
    /// 0 or 1; distinguishes the two primes above a split `p`
    pub index: u8,
    pub ideal: IdealBasis,
    /// an element of valuation exactly 1 here, prime to the conjugate ideal
    pub uniformizer: QuadInt,
}

impl PrimeFactor {
    /// `N(P) = p^f`.
    pub fn norm(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// `ord_P(2)`.
    pub fn ord_of_two(&self) -> u32 {
        if self.p == 2 {
            self.e
        } else {
            0
        }
    }

    pub fn is_dyadic(&self) -> bool {
        self.p == 2
    }

    /// Level at which Good-type counts become stable: `2 ord_P(2) + 1`.
    pub fn stable_good_level(&self) -> u32 {
        2 * self.ord_of_two() + 1
    }

    pub fn label(&self) -> String {
        match self.split_type {
            SplitType::Split => format!("P{}_{}", self.p, self.index + 1),
            _ => format!("P{}", self.p),
        }
    }
}

/// A full-rank `Z`-submodule of `O_K`, stored as the Hermite normal form
/// with rows `(a, 0)` and `(b, c)` in coordinates over `{1, w}`,
/// `a, c > 0`, `0 <= b < a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealBasis {
    a: i64,
    b: i64,
    c: i64,
}

impl IdealBasis {
    pub fn unit() -> Self {
        IdealBasis { a: 1, b: 0, c: 1 }
    }

    /// The ideal generated over `O_K` by `gens`.
    pub fn from_generators(ctx: &FieldContext, gens: &[QuadInt]) -> Self {
        let mut vectors = Vec::with_capacity(2 * gens.len());
        for &g in gens {
            vectors.push(g);
            vectors.push(ctx.mul(g, QuadInt::W));
        }
        Self::hnf(&vectors)
    }

    /// Hermite normal form of the lattice spanned by `vectors` (must be full rank).
    fn hnf(vectors: &[QuadInt]) -> Self {
        let mut a: i128 = 0;
        let mut pivot: Option<(i128, i128)> = None;
        for v in vectors {
            let (vx, vy) = (v.x as i128, v.y as i128);
            if vy == 0 {
                a = arith::gcd(a, vx);
                continue;
            }
            match pivot {
                None => pivot = Some((vx, vy)),
                Some((px, py)) => {
                    let (g, s, t) = arith::egcd(py, vy);
                    pivot = Some((s * px + t * vx, g));
                    // the complementary combination has zero second coordinate
                    let rest = (vy / g) * px - (py / g) * vx;
                    a = arith::gcd(a, rest);
                }
            }
        }
        let (mut px, mut py) = pivot.expect("lattice must have full rank");
        if py < 0 {
            px = -px;
            py = -py;
        }
        assert!(a > 0, "lattice must have full rank");
        IdealBasis { a: narrow(a), b: narrow(px.rem_euclid(a)), c: narrow(py) }
    }

    pub fn mul(&self, ctx: &FieldContext, other: &IdealBasis) -> Self {
        let mine = self.basis();
        let theirs = other.basis();
        let products: Vec<QuadInt> =
            mine.iter().flat_map(|&u| theirs.iter().map(move |&v| (u, v))).map(|(u, v)| ctx.mul(u, v)).collect();
        Self::hnf(&products)
    }

    pub fn pow(&self, ctx: &FieldContext, k: u32) -> Self {
        (0..k).fold(IdealBasis::unit(), |acc, _| acc.mul(ctx, self))
    }

    /// The two basis vectors as elements.
    pub fn basis(&self) -> [QuadInt; 2] {
        [QuadInt::new(self.a, 0), QuadInt::new(self.b, self.c)]
    }

    /// Lower-triangular HNF matrix `[[a, 0], [b, c]]`.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[self.a, 0], [self.b, self.c]]
    }

    pub fn norm(&self) -> u64 {
        (self.a as u64) * (self.c as u64)
    }

    /// Canonical coset representative `i + j w` with `0 <= i < a`, `0 <= j < c`.
    pub fn reduce(&self, v: QuadInt) -> QuadInt {
        let k = v.y.div_euclid(self.c);
        let j = v.y - k * self.c;
        let i = (v.x as i128 - k as i128 * self.b as i128).rem_euclid(self.a as i128);
        QuadInt::new(i as i64, j)
    }

    pub fn contains(&self, v: QuadInt) -> bool {
        self.reduce(v).is_zero()
    }

    /// Row-major index of the coset representative of `v`.
    pub fn index_of(&self, v: QuadInt) -> usize {
        let r = self.reduce(v);
        (r.x + self.a * r.y) as usize
    }

    pub fn dims(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }
}

/// The quadratic character `chi_D = (D | .)` attached to `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Character {
    pub disc: i64,
}

impl Character {
    pub fn value(&self, n: i64) -> i8 {
        arith::kronecker(self.disc, n)
    }
}

/// The Kronecker symbol `(D | n)`.
pub fn kronecker(disc: i64, n: i64) -> i8 {
    arith::kronecker(disc, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> QuadInt {
        QuadInt::new(x, y)
    }

    #[test]
    fn make_field_examples() {
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(k5.basis_kind(), BasisKind::Half);
        assert_eq!(k5.disc(), 5);
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(k2.basis_kind(), BasisKind::Sqrt);
        assert_eq!(k2.disc(), 8);
        assert_eq!(FieldContext::new(12), Err(FieldError::NotSquarefree(12)));
        assert_eq!(FieldContext::new(1), Err(FieldError::TooSmall(1)));
        assert_eq!(FieldContext::new(-3), Err(FieldError::TooSmall(-3)));
    }

    #[test]
    fn norm_trace_examples() {
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(k2.norm(q(1, 1)), -1);
        assert_eq!(k2.trace(q(1, 1)), 2);
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(k5.norm(q(0, 1)), -1);
        assert_eq!(k5.trace(q(0, 1)), 1);
        let k17 = FieldContext::new(17).unwrap();
        assert_eq!(k17.norm(q(2, 1)), 2);
        assert!(k17.is_totally_positive(q(2, 1)));
    }

    #[test]
    fn total_positivity_examples() {
        let k2 = FieldContext::new(2).unwrap();
        assert!(k2.is_totally_positive(q(2, 1)));
        assert!(!k2.is_totally_positive(q(0, 1)));
        assert!(!k2.is_totally_positive(QuadInt::ZERO));
        // agrees with the embeddings
        for x in -6..=6 {
            for y in -6..=6 {
                let (s1, s2) = k2.embeddings(q(x, y));
                assert_eq!(k2.is_totally_positive(q(x, y)), s1 > 0.0 && s2 > 0.0, "{x} {y}");
            }
        }
    }

    #[test]
    fn splitting_examples() {
        let k17 = FieldContext::new(17).unwrap();
        let ps = k17.split_prime(2).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|p| p.split_type == SplitType::Split && p.norm() == 2));
        // labels follow ascending roots of X^2 - X - 4 mod 2: 0 then 1
        assert!(ps[0].ideal.contains(q(0, 1)));
        assert!(ps[1].ideal.contains(q(-1, 1)));

        let k13 = FieldContext::new(13).unwrap();
        let ps = k13.split_prime(2).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].split_type, SplitType::Inert);
        assert_eq!(ps[0].norm(), 4);

        let k2 = FieldContext::new(2).unwrap();
        let ps = k2.split_prime(2).unwrap();
        assert_eq!(ps[0].split_type, SplitType::Ramified);
        assert_eq!(ps[0].ideal.pow(&k2, 2), IdealBasis::from_generators(&k2, &[q(2, 0)]));
        assert_eq!(k2.split_prime(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn uniformizers_have_valuation_one() {
        for d in [2, 3, 5, 6, 7, 10, 13, 17, 21, 33, 41] {
            let k = FieldContext::new(d).unwrap();
            for p in [2, 3, 5, 7, 11, 13, 17, 41] {
                let ps = k.split_prime(p).unwrap();
                let product: u64 = ps.iter().map(|pf| pf.norm().pow(pf.e)).product();
                assert_eq!(product, (p * p) as u64, "d={d} p={p}");
                for pf in &ps {
                    assert_eq!(k.ord_at(pf.uniformizer, pf).unwrap(), 1, "d={d} p={p}");
                    for other in ps.iter().filter(|o| *o != pf) {
                        assert_eq!(k.ord_at(pf.uniformizer, other).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn ord_examples() {
        let k2 = FieldContext::new(2).unwrap();
        let p2 = &k2.split_prime(2).unwrap()[0];
        assert_eq!(k2.ord_at(q(2, 0), p2).unwrap(), 2);
        let k13 = FieldContext::new(13).unwrap();
        assert_eq!(k13.ord_at(q(3, 0), &k13.split_prime(2).unwrap()[0]).unwrap(), 0);
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(k5.ord_at(q(4, 0), &k5.split_prime(2).unwrap()[0]).unwrap(), 2);
        assert_eq!(k5.ord_at(QuadInt::ZERO, &k5.split_prime(2).unwrap()[0]), Err(FieldError::ZeroValuation));
    }

    #[test]
    fn divisor_norm_examples() {
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(k2.divisor_ideal_norms(q(2, 0), DivisorFilter::All).unwrap(), vec![(1, 1), (2, 1), (4, 1)]);
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(k5.divisor_ideal_norms(q(1, 0), DivisorFilter::All).unwrap(), vec![(1, 1)]);
        let k17 = FieldContext::new(17).unwrap();
        assert_eq!(k17.divisor_ideal_norms(q(2, 0), DivisorFilter::All).unwrap(), vec![(1, 1), (2, 2), (4, 1)]);
        assert_eq!(k17.divisor_ideal_norms(q(2, 0), DivisorFilter::DivisibleBy2).unwrap(), vec![(4, 1)]);
        assert_eq!(k17.divisor_ideal_norms(q(2, 1), DivisorFilter::DivisibleBy2).unwrap(), vec![]);
        assert_eq!(k17.divisor_ideal_norms(q(6, 0), DivisorFilter::CoprimeTo2).unwrap(), vec![(1, 1), (9, 1)]);
        assert_eq!(k2.divisor_ideal_norms(q(4, 0), DivisorFilter::DivisibleBy4).unwrap(), vec![(16, 1)]);
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("2+1*w".parse::<QuadInt>().unwrap(), q(2, 1));
        assert_eq!("-3-2*w".parse::<QuadInt>().unwrap(), q(-3, -2));
        assert_eq!("w".parse::<QuadInt>().unwrap(), q(0, 1));
        assert_eq!(" 7 ".parse::<QuadInt>().unwrap(), q(7, 0));
        assert_eq!("2+w".parse::<QuadInt>().unwrap(), q(2, 1));
        assert_eq!("-w+4".parse::<QuadInt>().unwrap(), q(4, -1));
        assert!("2+*w".parse::<QuadInt>().is_err());
        assert!("".parse::<QuadInt>().is_err());
        assert!("x".parse::<QuadInt>().is_err());
        assert_eq!(q(11, -7).to_string(), "11-7*w");
    }

    #[test]
    fn sqrt_and_units() {
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(k5.fundamental_unit(), q(0, 1));
        let k2 = FieldContext::new(2).unwrap();
        assert_eq!(k2.fundamental_unit(), q(1, 1));
        let k3 = FieldContext::new(3).unwrap();
        assert_eq!(k3.fundamental_unit(), q(2, 1));
        let k17 = FieldContext::new(17).unwrap();
        let u = k17.fundamental_unit();
        assert_eq!(k17.norm(u).abs(), 1);
        for x in -5..=5 {
            for y in -5..=5 {
                let a = q(x, y);
                let s = k17.sqrt_exact(k17.square(a)).unwrap();
                assert!(s == a || s == -a);
            }
        }
        assert_eq!(k2.sqrt_exact(q(3, 0)), None);
        assert!(k2.sqrt_exact(q(2, 0)).is_some());
    }

    #[test]
    fn hnf_membership_matches_generator_multiples() {
        let k = FieldContext::new(7).unwrap();
        let gen = q(3, 1); // norm 2
        let ideal = IdealBasis::from_generators(&k, &[gen]);
        assert_eq!(ideal.norm(), 2);
        for x in -6..=6 {
            for y in -6..=6 {
                let v = q(x, y);
                assert_eq!(ideal.contains(v), k.div_exact(v, gen).is_some(), "{v}");
            }
        }
    }
}
