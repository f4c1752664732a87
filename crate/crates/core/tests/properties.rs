use num_traits::{One, Zero};
use proptest::prelude::*;

use foursq::density::{self, count_typed};
use foursq::eisenstein;
use foursq::field::{FieldContext, IdealBasis, PrimeFactor, QuadInt};
use foursq::lvalues;
use foursq::rational::{rat, Rational};
use foursq::rep;
use foursq::sweep;

const FIELDS: [i64; 8] = [2, 3, 5, 6, 7, 13, 17, 21];

fn field() -> impl Strategy<Value = FieldContext> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|d| FieldContext::new(d).unwrap())
}

fn element(r: i64) -> impl Strategy<Value = QuadInt> {
    (-r..=r, -r..=r).prop_map(|(x, y)| QuadInt::new(x, y))
}

/// A field together with a totally positive element of moderate norm.
fn positive(norm_max: i64) -> impl Strategy<Value = (FieldContext, QuadInt)> {
    (field(), element(40)).prop_filter_map("not totally positive", move |(k, m)| {
        (k.is_totally_positive(m) && k.norm(m) <= norm_max).then_some((k, m))
    })
}

/// Dyadic primes and the odd primes of norm at most 13.
fn test_primes(k: &FieldContext) -> Vec<PrimeFactor> {
    [2, 3, 5, 7, 11, 13]
        .into_iter()
        .flat_map(|p| k.split_prime(p).unwrap())
        .filter(|pr| pr.norm() <= 13 || pr.p == 2)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn display_parses_back(m in element(1_000_000)) {
        prop_assert_eq!(m.to_string().parse::<QuadInt>().unwrap(), m);
    }

    #[test]
    fn norm_is_multiplicative(k in field(), a in element(500), b in element(500)) {
        prop_assert_eq!(k.norm(k.mul(a, b)), k.norm(a) * k.norm(b));
        prop_assert_eq!(k.conj(k.conj(a)), a);
        prop_assert_eq!(k.mul(a, k.conj(a)), QuadInt::new(k.norm(a), 0));
        prop_assert_eq!(k.trace(k.mul(a, b)), k.trace(k.mul(k.conj(a), k.conj(b))));
    }

    #[test]
    fn factorization_accounts_for_norm(k in field(), m in element(60)) {
        prop_assume!(!m.is_zero());
        let product: u64 = k.factor(m).unwrap().iter().map(|(pr, e)| pr.norm().pow(*e)).product();
        prop_assert_eq!(product, k.norm(m).unsigned_abs());
    }

    #[test]
    fn principal_ideal_basis(k in field(), m in element(30), z in element(30)) {
        prop_assume!(!m.is_zero());
        let ideal = IdealBasis::from_generators(&k, &[m]);
        prop_assert_eq!(ideal.norm(), k.norm(m).unsigned_abs());
        prop_assert!(ideal.contains(k.mul(m, z)));
        prop_assert_eq!(ideal.reduce(ideal.reduce(z)), ideal.reduce(z));
    }

    #[test]
    fn bernoulli_polynomial_symmetry(n in -500i64..500, den in 1i64..200) {
        let t = rat(n, den);
        let one_minus = Rational::one() - &t;
        prop_assert_eq!(lvalues::bernoulli_poly2(&t), lvalues::bernoulli_poly2(&one_minus));
    }

    #[test]
    fn solutions_are_good_or_zero((k, m) in positive(400), level in 1u32..4) {
        for prime in test_primes(&k) {
            if let Ok(c) = count_typed(&k, &prime, level, m) {
                prop_assert_eq!(c.bad_residual(), 0);
            }
        }
    }

    #[test]
    fn good_counts_lift_by_cube((k, m) in positive(400)) {
        for prime in test_primes(&k) {
            let k0 = prime.stable_good_level();
            let (Ok(lo), Ok(hi)) = (count_typed(&k, &prime, k0, m), count_typed(&k, &prime, k0 + 1, m)) else {
                continue;
            };
            prop_assert_eq!(hi.good, lo.good * prime.norm().pow(3));
        }
    }

    #[test]
    fn closed_forms_match_engine((k, m) in positive(2000)) {
        for prime in test_primes(&k) {
            let engine = density::density(&k, &prime, m).unwrap().beta;
            let lemma = density::density_closed_form(&k, &prime, m).unwrap().beta();
            prop_assert_eq!(engine, lemma, "m={} at {}", m, prime.label());
        }
    }

    #[test]
    fn density_sees_only_square_classes((k, m) in positive(500), u in element(20)) {
        for prime in test_primes(&k) {
            if u.is_zero() || k.ord_at(u, &prime).unwrap() > 0 {
                continue;
            }
            let scaled = k.mul(m, k.square(u));
            let a = density::density(&k, &prime, m).unwrap().beta;
            let b = density::density(&k, &prime, scaled).unwrap().beta;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn eisenstein_coefficient_is_nonnegative((k, m) in positive(300)) {
        let e = eisenstein::eisenstein_coeff(&k, m).unwrap();
        prop_assert!(e.a_e >= Rational::zero());
        prop_assert_eq!(e.a_e.is_zero(), !e.locally_represented());
        prop_assert_eq!(e.locally_represented(), density::is_locally_represented(&k, m).unwrap());
    }

    #[test]
    fn orbit_invariants((k, m) in positive(60)) {
        let u = k.square(k.fundamental_unit());
        let moved = k.mul(m, u);
        prop_assert_eq!(sweep::canonical_orbit_rep(&k, moved), sweep::canonical_orbit_rep(&k, m));
        prop_assert_eq!(
            eisenstein::eisenstein_coeff(&k, moved).unwrap().a_e,
            eisenstein::eisenstein_coeff(&k, m).unwrap().a_e
        );
        let rep_m = sweep::canonical_orbit_rep(&k, m);
        prop_assert_eq!(
            rep::representation_number(&k, rep_m).unwrap(),
            rep::representation_number(&k, k.mul(rep_m, u)).unwrap()
        );
    }

    #[test]
    fn conjugation_preserves_counts((k, m) in positive(80)) {
        let row = eisenstein::decompose(&k, m).unwrap();
        let conj = eisenstein::decompose(&k, k.conj(m)).unwrap();
        prop_assert_eq!(row.r_q, conj.r_q);
        prop_assert_eq!(&row.a_e, &conj.a_e);
        prop_assert_eq!(Rational::from_integer(row.r_q.into()), &row.a_e + &row.a_c);
    }

    #[test]
    fn sqrt5_has_no_cusp_part(tr in 2i64..40, y in -12i64..12) {
        let k = FieldContext::new(5).unwrap();
        // m = x + y w with 2x + y = tr
        prop_assume!((tr - y) % 2 == 0);
        let m = QuadInt::new((tr - y) / 2, y);
        prop_assume!(k.is_totally_positive(m));
        let row = eisenstein::decompose(&k, m).unwrap();
        prop_assert!(row.a_c.is_zero());
        prop_assert_eq!(eisenstein::closed_formula_sqrt5(&k, m).unwrap() as u64, row.r_q);
    }
}
