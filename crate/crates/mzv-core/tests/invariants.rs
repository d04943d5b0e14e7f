//! Cross-module invariants, checked property-style and by exhaustive
//! sweeps over small grids.
//!
//! Every law here is asserted bit-exactly with `==`: the rationals never
//! round, so there is no tolerance anywhere. The property tests draw
//! random words, compositions, and weights; the sweeps walk complete
//! grids where exhaustion is affordable.

use mzv_core::identities::{
    check_weighted_reciprocity, partial_fraction_terms, reciprocal_pole_product, Evaluator,
    RatioOrientation,
};
use mzv_core::rational::{binomial, integer, parse_rational, ratio, Rational};
use mzv_core::series::{divide_one_minus_z, polylog_series};
use mzv_core::words::{
    composition_to_word, shuffle_enumerate, shuffle_polynomials, shuffle_recursive, Composition,
    Letter, Word, WordPolynomial,
};
use mzv_core::zeta::{z_eval, zeta_finite, zeta_table, zeta_weighted, WeightedComposition};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(any::<bool>(), 0..=max_len).prop_map(|bits| {
        Word::from_letters(
            bits.into_iter()
                .map(|bit| if bit { Letter::One } else { Letter::Zero })
                .collect(),
        )
    })
}

fn arb_composition() -> impl Strategy<Value = Composition> {
    proptest::collection::vec(1u32..=4, 1..=4)
        .prop_map(|parts| Composition::new(parts).unwrap())
}

/// Nonempty compositions small enough that the shuffle and series routes
/// stay cheap inside a 256-case property run.
fn small_composition() -> impl Strategy<Value = Composition> {
    proptest::collection::vec(1u32..=3, 1..=2)
        .prop_map(|parts| Composition::new(parts).unwrap())
}

fn weight_pool() -> Vec<Rational> {
    vec![integer(-1), integer(1), integer(2), ratio(1, 2)]
}

fn arb_weighted(max_part: u32, max_depth: usize) -> impl Strategy<Value = WeightedComposition> {
    proptest::collection::vec((1u32..=max_part, 0usize..weight_pool().len()), 1..=max_depth)
        .prop_map(|choices| {
            let pool = weight_pool();
            let parts: Vec<u32> = choices.iter().map(|(part, _)| *part).collect();
            let weights: Vec<Rational> =
                choices.iter().map(|(_, idx)| pool[*idx].clone()).collect();
            WeightedComposition::new(Composition::new(parts).unwrap(), weights).unwrap()
        })
}

/// A polynomial supported on composition codes, so that the evaluation
/// map accepts every term.
fn arb_code_polynomial() -> impl Strategy<Value = WordPolynomial> {
    proptest::collection::vec((arb_composition(), -9i64..=9), 1..=4).prop_map(|terms| {
        let mut polynomial = WordPolynomial::zero();
        for (composition, scale) in terms {
            polynomial.add_term(composition_to_word(&composition), integer(scale));
        }
        polynomial
    })
}

proptest! {
    // --- Word algebra laws ---------------------------------------------

    #[test]
    fn empty_word_is_the_shuffle_unit(u in arb_word(8)) {
        let product = shuffle_recursive(&Word::empty(), &u);
        prop_assert_eq!(product.num_terms(), 1);
        prop_assert_eq!(product.coefficient(&u), Rational::one());
    }

    #[test]
    fn shuffle_is_commutative(u in arb_word(6), v in arb_word(6)) {
        prop_assert_eq!(shuffle_recursive(&u, &v), shuffle_recursive(&v, &u));
    }

    #[test]
    fn shuffle_mass_is_a_binomial(u in arb_word(7), v in arb_word(7)) {
        // Every interleaving of u and v carries coefficient mass 1, and
        // there are C(|u|+|v|, |u|) of them.
        let product = shuffle_recursive(&u, &v);
        prop_assert_eq!(
            product.total_coefficient(),
            Rational::from_integer(binomial((u.len() + v.len()) as u64, u.len() as u64))
        );
    }

    #[test]
    fn shuffle_routes_agree(u in arb_word(7), v in arb_word(7)) {
        prop_assert_eq!(shuffle_recursive(&u, &v), shuffle_enumerate(&u, &v).unwrap());
    }

    #[test]
    fn shuffle_preserves_letter_counts(u in arb_word(6), v in arb_word(6)) {
        let ones = |w: &Word| w.letters().iter().filter(|l| **l == Letter::One).count();
        let expected_len = u.len() + v.len();
        let expected_ones = ones(&u) + ones(&v);
        for (word, _) in shuffle_recursive(&u, &v).terms() {
            prop_assert_eq!(word.len(), expected_len);
            prop_assert_eq!(ones(word), expected_ones);
        }
    }

    // --- Zeta tabulation laws ------------------------------------------

    #[test]
    fn zeta_tables_grow_monotonically(a in arb_composition(), n in 0usize..=24) {
        // Each horizon adds nonnegative summands, so the column never
        // decreases (this fails for weighted variants with sign changes,
        // which is why it is stated for the plain table only).
        let table = zeta_table(n, &a);
        let mut previous = Rational::zero();
        for m in 0..=n {
            prop_assert!(*table.value(m) >= previous);
            previous = table.value(m).clone();
        }
    }

    #[test]
    fn zeta_satisfies_the_head_recursion(a in arb_composition(), n in 0usize..=20) {
        // zeta_n(a1,...,ar) = sum_{m=1}^{n} zeta_{m-1}(a2,...,ar) / m^a1,
        // summing over the outermost index last.
        let head = a.first().unwrap();
        let tail = a.tail();
        let mut total = Rational::zero();
        for m in 1..=n {
            total += zeta_finite(m - 1, &tail) / integer(m as i64).pow(head as i32);
        }
        prop_assert_eq!(zeta_finite(n, &a), total);
    }

    #[test]
    fn weighted_single_index_matches_a_direct_sum(
        s in 1u32..=4,
        n in 0usize..=20,
        idx in 0usize..4,
    ) {
        let sigma = weight_pool()[idx].clone();
        let argument = WeightedComposition::new(
            Composition::new(vec![s]).unwrap(),
            vec![sigma.clone()],
        )
        .unwrap();
        let mut total = Rational::zero();
        for m in 1..=n {
            total += Rational::one() / (integer(m as i64).pow(s as i32) * sigma.pow(m as i32));
        }
        prop_assert_eq!(zeta_weighted(n, &argument), total);
    }

    #[test]
    fn evaluation_is_linear(
        p in arb_code_polynomial(),
        q in arb_code_polynomial(),
        n in 0usize..=12,
    ) {
        let sum = p.plus(&q);
        prop_assert_eq!(
            z_eval(n, &sum).unwrap(),
            z_eval(n, &p).unwrap() + z_eval(n, &q).unwrap()
        );
        let scale = ratio(3, 7);
        prop_assert_eq!(
            z_eval(n, &p.scaled(&scale)).unwrap(),
            scale * z_eval(n, &p).unwrap()
        );
    }

    // --- Series laws ----------------------------------------------------

    #[test]
    fn polylog_prefix_sums_are_zeta_tables(a in arb_composition(), order in 1usize..=16) {
        // [z^n] Li_a(z) / (1 - z) = zeta_n(a): dividing by 1 - z turns the
        // polylogarithm coefficients into the zeta column.
        let summed = divide_one_minus_z(&polylog_series(&a, order).unwrap());
        let table = zeta_table(order, &a);
        for n in 0..=order {
            prop_assert_eq!(summed.coefficient(n), table.value(n));
        }
    }

    // --- Kernel and rational plumbing ------------------------------------

    #[test]
    fn partial_fractions_reproduce_the_kernel(
        a in 1u32..=5,
        b in 1u32..=5,
        n in 2u64..=40,
        k_seed in 0u64..1000,
    ) {
        let k = 1 + k_seed % (n - 1);
        let terms = partial_fraction_terms(a, b).unwrap();
        prop_assert_eq!(terms.evaluate(n, k), reciprocal_pole_product(a, b, n, k));
    }

    #[test]
    fn rationals_roundtrip_through_strings(
        numer in -1_000_000_000i64..=1_000_000_000,
        denom in 1i64..=1_000_000,
    ) {
        let x = ratio(numer, denom);
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
}

proptest! {
    // The identity checks cost more per case, so run fewer of them.
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cross_sum_is_symmetric(
        a in arb_composition(),
        b in arb_composition(),
        n in 0usize..=14,
    ) {
        let eval = Evaluator::new();
        prop_assert_eq!(eval.r_direct(n, &a, &b), eval.r_direct(n, &b, &a));
    }

    #[test]
    fn every_route_to_the_cross_sum_agrees(
        a in small_composition(),
        b in small_composition(),
        n in 0usize..=10,
    ) {
        let eval = Evaluator::new();
        let direct = eval.r_direct(n, &a, &b);
        prop_assert_eq!(eval.r_recurrence(n, &a, &b), direct.clone());
        prop_assert_eq!(eval.r_shuffle(n, &a, &b), direct.clone());
        prop_assert_eq!(eval.r_via_series(n, &a, &b).unwrap(), direct);
    }

    #[test]
    fn split_identities_have_zero_residual(
        a in small_composition(),
        b in small_composition(),
        n in 1usize..=12,
        j_seed in 0usize..144,
    ) {
        let j = 1 + j_seed % n;
        let eval = Evaluator::new();
        prop_assert!(eval.check_reciprocity(n, j, &a, &b).unwrap().ok());
        prop_assert!(eval.check_complementary(n, j, &a, &b).unwrap().ok());
    }

    #[test]
    fn weighted_split_identity_has_zero_residual(
        a in arb_weighted(3, 2),
        b in arb_weighted(3, 2),
        n in 1usize..=8,
        j_seed in 0usize..64,
    ) {
        let j = 1 + j_seed % n;
        prop_assert!(check_weighted_reciprocity(n, j, &a, &b).unwrap().ok());
    }

    #[test]
    fn weighted_recurrence_matches_weighted_direct(
        a in arb_weighted(3, 2),
        b in arb_weighted(3, 2),
        n in 0usize..=8,
    ) {
        let eval = Evaluator::new();
        prop_assert_eq!(
            eval.r_weighted_recurrence(n, &a, &b, RatioOrientation::OwnOverOther),
            eval.r_weighted_direct(n, &a, &b)
        );
    }
}

/// All binary words of the given length, in bitmask order.
fn words_of_len(len: usize) -> Vec<Word> {
    (0..1usize << len)
        .map(|mask| {
            Word::from_letters(
                (0..len)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Letter::One
                        } else {
                            Letter::Zero
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

#[test]
fn shuffle_is_associative_on_short_words() {
    // (u sh v) sh t = u sh (v sh t) for every triple with total length
    // at most 7 — 7423 triples, grouped by length so nothing is wasted.
    let max_total = 7usize;
    let by_len: Vec<Vec<Word>> = (0..=max_total).map(words_of_len).collect();
    let mut checked = 0usize;
    for l1 in 0..=max_total {
        for l2 in 0..=max_total - l1 {
            for l3 in 0..=max_total - l1 - l2 {
                for u in &by_len[l1] {
                    for v in &by_len[l2] {
                        for t in &by_len[l3] {
                            let left = shuffle_polynomials(
                                &shuffle_recursive(u, v),
                                &WordPolynomial::from_word(t.clone()),
                            );
                            let right = shuffle_polynomials(
                                &WordPolynomial::from_word(u.clone()),
                                &shuffle_recursive(v, t),
                            );
                            assert_eq!(left, right, "u={u} v={v} t={t}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(checked, 7423);
}

#[test]
fn single_indices_match_power_sums_up_to_fifty() {
    // zeta_n((s)) is the generalized harmonic number H_n^(s).
    for s in 1u32..=4 {
        let a = Composition::new(vec![s]).unwrap();
        let table = zeta_table(50, &a);
        let mut partial = Rational::zero();
        for n in 1..=50usize {
            partial += Rational::new(1.into(), mzv_core::rational::int_pow(n as u64, s));
            assert_eq!(table.value(n), &partial, "s={s} n={n}");
        }
    }
}
