//! Finite multiple zeta values by exact tabulation.
//!
//! The defining nested sum
//!
//! ```text
//! zeta_N(a1,...,ar) = sum over N >= n1 > ... > nr >= 1 of prod 1/ni^ai
//! ```
//!
//! satisfies the one-step recursion
//! `zeta_N(a1,...,ar) = sum_{m=1}^{N} zeta_{m-1}(a2,...,ar) / m^a1`,
//! so a whole table `zeta_0, ..., zeta_N` for one argument costs
//! `O(N * depth)` rational operations via prefix sums. The weighted
//! variant scales each summation index by a geometric factor:
//!
//! ```text
//! zeta_N((a1,...,ar), (s1,...,sr)) = sum prod 1/(ni^ai * si^ni)
//! ```
//!
//! with nonzero rational weights `si`; all-ones weights recover the plain
//! value exactly. Conventions: `zeta_N(()) = 1` for every `N >= 0`, and
//! `zeta_0` of any nonempty argument is 0. Key items: [`zeta_table`],
//! [`zeta_finite`], [`zeta_weighted`], [`z_eval`], [`WeightedComposition`],
//! [`ZetaCache`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::rational::{int_pow, Rational};
use crate::words::{word_to_composition, Composition, WordPolynomial};
use crate::Error;

/// A composition together with one nonzero rational weight per part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedComposition {
    parts: Composition,
    weights: Vec<Rational>,
}

impl WeightedComposition {
    /// Pairs a composition with its weights; the counts must match and
    /// every weight must be nonzero.
    pub fn new(parts: Composition, weights: Vec<Rational>) -> Result<Self, Error> {
        if parts.depth() != weights.len() {
            return Err(Error::WeightCountMismatch {
                parts: parts.depth(),
                weights: weights.len(),
            });
        }
        if weights.iter().any(|w| w.is_zero()) {
            return Err(Error::ZeroWeight);
        }
        Ok(WeightedComposition { parts, weights })
    }

    /// All-ones weights: the plain finite zeta value.
    pub fn unweighted(parts: Composition) -> Self {
        let weights = vec![Rational::one(); parts.depth()];
        WeightedComposition { parts, weights }
    }

    /// `((first, rest...), (weight, rest...))` from a head and a tail.
    pub fn cons(
        first_part: u32,
        first_weight: Rational,
        tail: &WeightedComposition,
    ) -> Result<Self, Error> {
        if first_weight.is_zero() {
            return Err(Error::ZeroWeight);
        }
        let parts = Composition::cons(first_part, &tail.parts)?;
        let mut weights = Vec::with_capacity(1 + tail.weights.len());
        weights.push(first_weight);
        weights.extend_from_slice(&tail.weights);
        Ok(WeightedComposition { parts, weights })
    }

    pub fn parts(&self) -> &Composition {
        &self.parts
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn depth(&self) -> usize {
        self.parts.depth()
    }

    pub fn weight(&self) -> u32 {
        self.parts.weight()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Leading exponent and its weight.
    pub fn first(&self) -> Option<(u32, &Rational)> {
        self.parts.first().map(|part| (part, &self.weights[0]))
    }

    /// Everything after the first index; empty stays empty.
    pub fn tail(&self) -> WeightedComposition {
        WeightedComposition {
            parts: self.parts.tail(),
            weights: self.weights.iter().skip(1).cloned().collect(),
        }
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|w| w.is_one())
    }
}

/// The values `zeta_0(arg), ..., zeta_N(arg)` for one argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaTable {
    argument: WeightedComposition,
    values: Vec<Rational>,
}

impl ZetaTable {
    pub fn argument(&self) -> &WeightedComposition {
        &self.argument
    }

    /// Largest horizon covered by the table.
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// `zeta_n` of the argument; panics past [`ZetaTable::max_n`].
    pub fn value(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Core tabulation. Starts from the all-ones table of the empty argument
/// and folds in indices from the innermost outwards; each pass turns the
/// table of the tail into the table of the full argument via
/// `new[m] = new[m-1] + tail[m-1] / (m^part * weight^m)`.
fn compute_values(argument: &WeightedComposition, n: usize) -> Vec<Rational> {
    let mut values = vec![Rational::one(); n + 1];
    let parts = argument.parts().parts();
    let weights = argument.weights();
    for (part, weight) in parts.iter().zip(weights).rev() {
        let tail = std::mem::replace(&mut values, Vec::with_capacity(n + 1));
        values.push(Rational::zero());
        let unweighted = weight.is_one();
        let mut weight_power = Rational::one();
        for m in 1..=n {
            let mut term = &tail[m - 1] / Rational::from_integer(int_pow(m as u64, *part));
            if !unweighted {
                weight_power *= weight;
                term /= &weight_power;
            }
            let next = &values[m - 1] + term;
            values.push(next);
        }
    }
    values
}

/// Table of plain finite zeta values `zeta_0(a), ..., zeta_N(a)`.
pub fn zeta_table(n: usize, a: &Composition) -> ZetaTable {
    zeta_weighted_table(n, &WeightedComposition::unweighted(a.clone()))
}

/// `zeta_N(a)` alone.
pub fn zeta_finite(n: usize, a: &Composition) -> Rational {
    zeta_weighted(n, &WeightedComposition::unweighted(a.clone()))
}

/// Table of weighted finite zeta values.
pub fn zeta_weighted_table(n: usize, argument: &WeightedComposition) -> ZetaTable {
    ZetaTable {
        argument: argument.clone(),
        values: compute_values(argument, n),
    }
}

/// `zeta_N(a, s)` alone.
pub fn zeta_weighted(n: usize, argument: &WeightedComposition) -> Rational {
    compute_values(argument, n)
        .pop()
        .expect("tables cover at least n = 0")
}

/// Linear extension of `word |-> zeta_N(composition of word)` to word
/// polynomials. Every word with a nonzero coefficient must be the code of
/// a composition (empty or ending in `1`).
pub fn z_eval(n: usize, polynomial: &WordPolynomial) -> Result<Rational, Error> {
    let mut total = Rational::zero();
    for (word, coefficient) in polynomial.terms() {
        let composition = word_to_composition(word)?;
        total += coefficient * zeta_finite(n, &composition);
    }
    Ok(total)
}

/// Shared table store keyed by argument. Tables only ever grow; concurrent
/// lookups may duplicate work but never disagree, since the values are
/// pure functions of the argument.
#[derive(Debug, Default)]
pub struct ZetaCache {
    tables: Mutex<HashMap<WeightedComposition, Arc<Vec<Rational>>>>,
}

impl ZetaCache {
    pub fn new() -> Self {
        ZetaCache::default()
    }

    /// The table for `argument` covering at least `0..=n`.
    pub fn table(&self, argument: &WeightedComposition, n: usize) -> Arc<Vec<Rational>> {
        if let Some(table) = self.tables.lock().unwrap().get(argument) {
            if table.len() > n {
                return Arc::clone(table);
            }
        }
        let fresh = Arc::new(compute_values(argument, n));
        let mut tables = self.tables.lock().unwrap();
        let slot = tables
            .entry(argument.clone())
            .or_insert_with(|| Arc::clone(&fresh));
        if slot.len() < fresh.len() {
            *slot = Arc::clone(&fresh);
        }
        Arc::clone(slot)
    }

    pub fn zeta_weighted(&self, n: usize, argument: &WeightedComposition) -> Rational {
        self.table(argument, n)[n].clone()
    }

    pub fn zeta(&self, n: usize, a: &Composition) -> Rational {
        self.zeta_weighted(n, &WeightedComposition::unweighted(a.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};
    use crate::words::{compositions_of_weight, Word};

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn weighted(parts: &[u32], weights: &[(i64, i64)]) -> WeightedComposition {
        WeightedComposition::new(
            comp(parts),
            weights.iter().map(|&(p, q)| ratio(p, q)).collect(),
        )
        .unwrap()
    }

    /// Independent oracle: enumerate the strictly decreasing index tuples
    /// directly.
    fn zeta_brute(n: usize, parts: &[u32], weights: &[Rational]) -> Rational {
        fn go(bound: usize, parts: &[u32], weights: &[Rational]) -> Rational {
            let Some((&part, rest_parts)) = parts.split_first() else {
                return Rational::one();
            };
            let (weight, rest_weights) = weights.split_first().unwrap();
            let mut total = Rational::zero();
            for m in rest_parts.len() + 1..=bound {
                let mut factor =
                    Rational::new(1.into(), int_pow(m as u64, part));
                if !weight.is_one() {
                    let mut weight_power = Rational::one();
                    for _ in 0..m {
                        weight_power *= weight;
                    }
                    factor /= weight_power;
                }
                total += factor * go(m - 1, rest_parts, rest_weights);
            }
            total
        }
        go(n, parts, weights)
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(zeta_finite(3, &comp(&[1])), ratio(11, 6));
        assert_eq!(zeta_finite(1, &comp(&[1])), integer(1));
        assert_eq!(zeta_finite(0, &comp(&[1])), integer(0));
    }

    #[test]
    fn empty_argument_is_one_at_every_horizon() {
        let table = zeta_table(5, &Composition::empty());
        assert_eq!(table.values(), &vec![integer(1); 6][..]);
        assert_eq!(zeta_finite(0, &Composition::empty()), integer(1));
    }

    #[test]
    fn frozen_small_values() {
        assert_eq!(zeta_finite(2, &comp(&[1, 1])), ratio(1, 2));
        assert_eq!(zeta_finite(4, &comp(&[2, 1])), ratio(17, 32));
        assert_eq!(zeta_finite(5, &comp(&[2])), ratio(5269, 3600));
        let table = zeta_table(2, &comp(&[1]));
        assert_eq!(table.values(), &[integer(0), integer(1), ratio(3, 2)][..]);
        let table = zeta_table(3, &comp(&[1, 1]));
        assert_eq!(
            table.values(),
            &[integer(0), integer(0), ratio(1, 2), integer(1)][..]
        );
    }

    #[test]
    fn depth_exceeding_horizon_gives_zero() {
        // A strictly decreasing r-tuple needs n1 >= r.
        assert_eq!(zeta_finite(2, &comp(&[1, 1, 1])), integer(0));
        assert_eq!(zeta_finite(0, &comp(&[4])), integer(0));
    }

    #[test]
    fn tables_match_brute_enumeration() {
        for weight in 1..=4u32 {
            for composition in compositions_of_weight(weight) {
                let ones = vec![Rational::one(); composition.depth()];
                for n in 0..=8usize {
                    assert_eq!(
                        zeta_finite(n, &composition),
                        zeta_brute(n, composition.parts(), &ones),
                        "n={n} a={composition}"
                    );
                }
            }
        }
    }

    #[test]
    fn single_index_matches_direct_power_sums() {
        for s in 1..=4u32 {
            let a = comp(&[s]);
            let mut direct = Rational::zero();
            for k in 1..=50u64 {
                direct += Rational::new(1.into(), int_pow(k, s));
                assert_eq!(zeta_finite(k as usize, &a), direct, "s={s} N={k}");
            }
        }
    }

    #[test]
    fn weighted_frozen_values() {
        // Alternating harmonic-type sum: sum_{n<=2} (-1)^n / n = -1 + 1/2.
        assert_eq!(
            zeta_weighted(2, &weighted(&[1], &[(-1, 1)])),
            ratio(-1, 2)
        );
        // Depth 2 with mixed weights at N = 3.
        assert_eq!(
            zeta_weighted(3, &weighted(&[1, 1], &[(-1, 1), (2, 1)])),
            ratio(1, 24)
        );
    }

    #[test]
    fn weighted_tables_match_brute_enumeration() {
        let pool = [ratio(1, 1), ratio(-1, 1), ratio(2, 1), ratio(1, 2)];
        for composition in compositions_up_to(3) {
            let depth = composition.depth();
            for assignment in weight_assignments(&pool, depth) {
                let argument =
                    WeightedComposition::new(composition.clone(), assignment.clone())
                        .unwrap();
                for n in 0..=6usize {
                    assert_eq!(
                        zeta_weighted(n, &argument),
                        zeta_brute(n, composition.parts(), &assignment),
                        "n={n} a={composition} weights={assignment:?}"
                    );
                }
            }
        }
    }

    fn compositions_up_to(max_weight: u32) -> Vec<Composition> {
        let mut all = Vec::new();
        for weight in 1..=max_weight {
            all.extend(compositions_of_weight(weight));
        }
        all
    }

    fn weight_assignments(pool: &[Rational], depth: usize) -> Vec<Vec<Rational>> {
        let mut all = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for assignment in &all {
                for weight in pool {
                    let mut extended = assignment.clone();
                    extended.push(weight.clone());
                    next.push(extended);
                }
            }
            all = next;
        }
        all
    }

    #[test]
    fn all_ones_weights_equal_plain_values_bit_exactly() {
        for weight in 1..=4u32 {
            for composition in compositions_of_weight(weight) {
                let argument = WeightedComposition::unweighted(composition.clone());
                for n in 0..=10usize {
                    assert_eq!(zeta_weighted(n, &argument), zeta_finite(n, &composition));
                }
            }
        }
    }

    #[test]
    fn weighted_composition_validation() {
        assert_eq!(
            WeightedComposition::new(comp(&[1, 2]), vec![Rational::one()]),
            Err(Error::WeightCountMismatch { parts: 2, weights: 1 })
        );
        assert_eq!(
            WeightedComposition::new(comp(&[1]), vec![Rational::zero()]),
            Err(Error::ZeroWeight)
        );
        let wc = weighted(&[2, 1], &[(-1, 1), (1, 2)]);
        assert_eq!(wc.first(), Some((2, &ratio(-1, 1))));
        assert_eq!(wc.tail(), weighted(&[1], &[(1, 2)]));
        assert!(!wc.is_unweighted());
        assert!(WeightedComposition::unweighted(comp(&[3])).is_unweighted());
    }

    #[test]
    fn z_eval_is_linear_and_rejects_bad_words() {
        // 1*"1" at N = 3 is the harmonic number 11/6.
        let mut poly = WordPolynomial::zero();
        poly.add_term("1".parse().unwrap(), integer(1));
        assert_eq!(z_eval(3, &poly).unwrap(), ratio(11, 6));

        // 2*"11" at N = 2 doubles zeta_2(1,1) = 1/2.
        let mut poly = WordPolynomial::zero();
        poly.add_term("11".parse().unwrap(), integer(2));
        assert_eq!(z_eval(2, &poly).unwrap(), integer(1));

        // The unit evaluates to 1 at every horizon.
        assert_eq!(z_eval(0, &WordPolynomial::unit()).unwrap(), integer(1));

        let mut poly = WordPolynomial::zero();
        poly.add_term("10".parse().unwrap(), integer(1));
        assert!(matches!(
            z_eval(2, &poly),
            Err(Error::WordNotComposition(_))
        ));
    }

    #[test]
    fn z_eval_of_shuffle_equals_the_cross_sum() {
        // Evaluating a shuffled pair of codes gives the cross sum
        // R_N(a; b) = sum_{k=1}^{N} zeta_{N-k}(b) zeta_{k-1}(a2,...) / k^a1,
        // not the pointwise product of the two zeta values (the two only
        // meet in the infinite limit). Spot-check a = (1), b = (2).
        let product = crate::words::shuffle_recursive(
            &"1".parse::<Word>().unwrap(),
            &"01".parse::<Word>().unwrap(),
        );
        let b = comp(&[2]);
        for n in 0..=12usize {
            let mut cross = Rational::zero();
            for k in 1..=n {
                cross += zeta_finite(n - k, &b) / integer(k as i64);
            }
            assert_eq!(z_eval(n, &product).unwrap(), cross, "n={n}");
        }
    }

    #[test]
    fn cache_serves_growing_tables() {
        let cache = ZetaCache::new();
        let a = WeightedComposition::unweighted(comp(&[2]));
        let short = cache.table(&a, 3);
        assert_eq!(short.len(), 4);
        let long = cache.table(&a, 10);
        assert_eq!(long.len(), 11);
        assert_eq!(long[3], short[3]);
        assert_eq!(cache.zeta(3, &comp(&[2])), zeta_finite(3, &comp(&[2])));
        // Asking for a shorter horizon reuses the long table.
        let again = cache.table(&a, 2);
        assert_eq!(again.len(), 11);
    }
}
