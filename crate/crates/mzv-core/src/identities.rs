//! Reciprocity relations between finite multiple zeta values.
//!
//! Everything revolves around the cross sum of two compositions,
//!
//! ```text
//! R_N(a; b) = sum_{k=1}^{N} zeta_{N-k}(b) * zeta_{k-1}(a2,...,ar) / k^a1,
//! ```
//!
//! which is symmetric in `a` and `b` and equals the shuffle evaluation
//! `zeta_N(a ⧢ b)`. Four independent routes compute it: the direct
//! convolution above, a recurrence driven by the partial-fraction split of
//! `1/(k^a (N-k)^b)`, the shuffle decomposition evaluated term by term, and
//! a power-series product (in [`crate::series`]). On top of `R_N` sit
//! exact split identities: for every split point `1 <= j <= N` the two
//! partial cross sums recombine into products of finite zeta values plus
//! `R_N`, with an exactly known boundary correction. All checks return a
//! [`ReciprocityReport`] whose residual must be identically zero.
//!
//! The weighted generalisation attaches a nonzero rational weight to every
//! index (each summand gains a factor `1/s^n` per index), and all of the
//! above survives with the bookkeeping carried by [`WeightedComposition`].
//!
//! Key items: [`Evaluator`], [`ReciprocityReport`], [`r_direct`],
//! [`r_recurrence`], [`r_shuffle`], [`check_reciprocity`],
//! [`check_complementary`], [`check_weighted_reciprocity`],
//! [`partial_fraction_terms`], [`euler_depth2`], [`asymptotic_gap`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, int_pow, Rational};
use crate::words::{shuffle_compositions, Composition};
use crate::zeta::{WeightedComposition, ZetaCache};
use crate::Error;

/// Both sides of one split identity at one grid point, with the exact
/// residual `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub n: usize,
    pub j: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
}

impl ReciprocityReport {
    pub fn new(n: usize, j: usize, lhs: Rational, rhs: Rational) -> Self {
        let residual = &lhs - &rhs;
        ReciprocityReport {
            n,
            j,
            lhs,
            rhs,
            residual,
        }
    }

    /// True exactly when the residual is zero.
    pub fn ok(&self) -> bool {
        self.residual.is_zero()
    }

    /// The canonical JSON record: `N`, `j`, exact `lhs`/`rhs`/`residual`
    /// as lowest-terms strings, and the `ok` flag.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "j": self.j,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "residual": self.residual.to_string(),
            "ok": self.ok(),
        })
    }
}

/// One summand of a partial-fraction split: `coefficient / (N^n_exponent *
/// pole^pole_exponent)` where the pole variable is `k` on one side and
/// `N-k` on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionTerm {
    pub coefficient: Rational,
    pub n_exponent: u32,
    pub pole_exponent: u32,
}

/// The exact split of `1/(k^a * (N-k)^b)` into pure powers of `k` and of
/// `N-k` with `1/N` prefactors:
///
/// ```text
/// 1/(k^a (N-k)^b) = sum_{i=1}^{a} C(i+b-2, b-1) / (N^(i+b-1) k^(a+1-i))
///                 + sum_{i=1}^{b} C(i+a-2, a-1) / (N^(i+a-1) (N-k)^(b+1-i))
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionTerms {
    pub a: u32,
    pub b: u32,
    pub k_side: Vec<PartialFractionTerm>,
    pub nk_side: Vec<PartialFractionTerm>,
}

impl PartialFractionTerms {
    /// Substitutes concrete `N` and `k`; requires `1 <= k <= N-1` so no
    /// pole is hit.
    pub fn evaluate(&self, n: u64, k: u64) -> Rational {
        assert!(k >= 1 && k < n, "evaluation needs 1 <= k <= N-1");
        let mut total = Rational::zero();
        for term in &self.k_side {
            total += &term.coefficient
                / Rational::from_integer(
                    int_pow(n, term.n_exponent) * int_pow(k, term.pole_exponent),
                );
        }
        for term in &self.nk_side {
            total += &term.coefficient
                / Rational::from_integer(
                    int_pow(n, term.n_exponent) * int_pow(n - k, term.pole_exponent),
                );
        }
        total
    }
}

/// The split of `1/(k^a * (N-k)^b)`; both exponents must be at least 1.
pub fn partial_fraction_terms(a: u32, b: u32) -> Result<PartialFractionTerms, Error> {
    if a < 1 || b < 1 {
        return Err(Error::ZeroPart);
    }
    let mut k_side = Vec::with_capacity(a as usize);
    for i in 1..=a {
        k_side.push(PartialFractionTerm {
            coefficient: Rational::from_integer(binomial((i + b - 2) as u64, (b - 1) as u64)),
            n_exponent: i + b - 1,
            pole_exponent: a + 1 - i,
        });
    }
    let mut nk_side = Vec::with_capacity(b as usize);
    for i in 1..=b {
        nk_side.push(PartialFractionTerm {
            coefficient: Rational::from_integer(binomial((i + a - 2) as u64, (a - 1) as u64)),
            n_exponent: i + a - 1,
            pole_exponent: b + 1 - i,
        });
    }
    Ok(PartialFractionTerms { a, b, k_side, nk_side })
}

/// `1/(k^a * (N-k)^b)` evaluated directly, for comparison against
/// [`PartialFractionTerms::evaluate`].
pub fn reciprocal_pole_product(a: u32, b: u32, n: u64, k: u64) -> Rational {
    assert!(k >= 1 && k < n, "evaluation needs 1 <= k <= N-1");
    Rational::new(1.into(), int_pow(k, a) * int_pow(n - k, b))
}

/// Euler-style decomposition of a product of two depth-one values into
/// depth-two terms: `zeta(a) * zeta(b) = sum coeff * zeta(c1, c2)` with
///
/// ```text
/// (C(i+b-2, b-1), (i+b-1, a+1-i))  for i = 1..=a, and
/// (C(i+a-2, a-1), (i+a-1, b+1-i))  for i = 1..=b,
/// ```
///
/// merged over equal compositions and sorted. Both exponents must be at
/// least 1.
pub fn euler_depth2(a: u32, b: u32) -> Vec<(Rational, Composition)> {
    fn push(
        merged: &mut std::collections::BTreeMap<Composition, Rational>,
        outer: u32,
        inner: u32,
        coefficient: Rational,
    ) {
        let composition = Composition::new(vec![outer, inner]).expect("parts are >= 1");
        *merged.entry(composition).or_insert_with(Rational::zero) += coefficient;
    }

    assert!(a >= 1 && b >= 1, "exponents must be at least 1");
    let mut merged = std::collections::BTreeMap::new();
    for i in 1..=a {
        push(
            &mut merged,
            i + b - 1,
            a + 1 - i,
            Rational::from_integer(binomial((i + b - 2) as u64, (b - 1) as u64)),
        );
    }
    for i in 1..=b {
        push(
            &mut merged,
            i + a - 1,
            b + 1 - i,
            Rational::from_integer(binomial((i + a - 2) as u64, (a - 1) as u64)),
        );
    }
    merged.into_iter().map(|(c, q)| (q, c)).collect()
}

/// Which way the demoted index of the partial-fraction recurrence carries
/// its weight ratio: the derivation gives the demoted index the ratio
/// `own first weight / other side's first weight`; the swapped variant is
/// kept behind this switch so the two can be compared numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RatioOrientation {
    /// Demoted index keeps its own leading weight divided by the other
    /// side's leading weight. Agrees with the direct cross sum.
    #[default]
    OwnOverOther,
    /// The swapped ratio; retained for comparison, provably different.
    OtherOverOwn,
}

type PairKey = (WeightedComposition, WeightedComposition);
type ShuffleTerms = Arc<Vec<(Rational, Composition)>>;
type Column = Arc<Vec<Rational>>;

/// Shared computation state: zeta tables, shuffle decompositions, and
/// cross-sum tables, all keyed by their arguments. Every method is a pure
/// function of its inputs; the caches only avoid recomputation.
#[derive(Debug, Default)]
pub struct Evaluator {
    zetas: ZetaCache,
    shuffles: Mutex<HashMap<(Composition, Composition), ShuffleTerms>>,
    direct_tables: Mutex<HashMap<PairKey, Column>>,
    recurrence_tables: Mutex<HashMap<(PairKey, RatioOrientation), Column>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    /// `zeta_n(a)` through the shared table cache.
    pub fn zeta(&self, n: usize, a: &Composition) -> Rational {
        self.zetas.zeta(n, a)
    }

    /// Weighted `zeta_n(a, s)` through the shared table cache.
    pub fn zeta_weighted(&self, n: usize, argument: &WeightedComposition) -> Rational {
        self.zetas.zeta_weighted(n, argument)
    }

    fn table(&self, argument: &WeightedComposition, n: usize) -> Arc<Vec<Rational>> {
        self.zetas.table(argument, n)
    }

    /// The shuffle decomposition of `code(a) ⧢ code(b)` as compositions,
    /// cached per pair.
    pub fn shuffle_terms(
        &self,
        a: &Composition,
        b: &Composition,
    ) -> Arc<Vec<(Rational, Composition)>> {
        let key = (a.clone(), b.clone());
        if let Some(terms) = self.shuffles.lock().unwrap().get(&key) {
            return Arc::clone(terms);
        }
        let fresh = Arc::new(shuffle_compositions(a, b));
        Arc::clone(
            self.shuffles
                .lock()
                .unwrap()
                .entry(key)
                .or_insert(fresh),
        )
    }

    /// Direct cross sum `R_n(a; b)`. An empty `a` falls back to the
    /// symmetric form, so `R_n((); b) = zeta_n(b)` and `R_n((); ()) = 1`.
    pub fn r_direct(&self, n: usize, a: &Composition, b: &Composition) -> Rational {
        self.r_weighted_direct(
            n,
            &WeightedComposition::unweighted(a.clone()),
            &WeightedComposition::unweighted(b.clone()),
        )
    }

    /// Weighted direct cross sum
    /// `R_n(a,s; b,t) = sum_{k=1}^{n} zeta_{n-k}(b,t) * zeta_{k-1}(a2,s2) / (k^a1 * s1^k)`.
    pub fn r_weighted_direct(
        &self,
        n: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
    ) -> Rational {
        self.r_weighted_direct_table(n, a, b)[n].clone()
    }

    /// The whole column `R_0, ..., R_n` of weighted direct cross sums.
    pub fn r_weighted_direct_table(
        &self,
        n: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
    ) -> Arc<Vec<Rational>> {
        let Some((a1, s1)) = a.first() else {
            // No head to convolve against: R reduces to the zeta table.
            return self.table(b, n);
        };
        let key = (a.clone(), b.clone());
        if let Some(table) = self.direct_tables.lock().unwrap().get(&key) {
            if table.len() > n {
                return Arc::clone(table);
            }
        }

        let b_table = self.table(b, n);
        let a_tail_table = self.table(&a.tail(), n);
        // kernel[k] = 1 / (k^a1 * s1^k) for k = 1..=n.
        let s1 = s1.clone();
        let unweighted = s1.is_one();
        let mut weight_power = Rational::one();
        let mut kernel = Vec::with_capacity(n + 1);
        kernel.push(Rational::zero());
        for k in 1..=n {
            let mut value = Rational::new(1.into(), int_pow(k as u64, a1));
            if !unweighted {
                weight_power *= &s1;
                value /= &weight_power;
            }
            kernel.push(value);
        }

        let mut values = Vec::with_capacity(n + 1);
        values.push(Rational::zero());
        for m in 1..=n {
            let mut total = Rational::zero();
            for k in 1..=m {
                let factor = &a_tail_table[k - 1];
                if factor.is_zero() {
                    continue;
                }
                total += &b_table[m - k] * &(factor * &kernel[k]);
            }
            values.push(total);
        }

        let fresh = Arc::new(values);
        let mut tables = self.direct_tables.lock().unwrap();
        let slot = tables.entry(key).or_insert_with(|| Arc::clone(&fresh));
        if slot.len() < fresh.len() {
            *slot = Arc::clone(&fresh);
        }
        Arc::clone(slot)
    }

    /// Cross sum by the partial-fraction recurrence, unweighted view.
    pub fn r_recurrence(&self, n: usize, a: &Composition, b: &Composition) -> Rational {
        self.r_weighted_recurrence(
            n,
            &WeightedComposition::unweighted(a.clone()),
            &WeightedComposition::unweighted(b.clone()),
            RatioOrientation::default(),
        )
    }

    /// Cross sum by the partial-fraction recurrence. Splitting the kernel
    /// `1/(k^a1 (n1-k)^b1)` of the double-sum form of `R` turns it into
    ///
    /// ```text
    /// R_N(a,s; b,t) =
    ///   sum_{i=1}^{a1} C(i+b1-2, b1-1) sum_{n1=1}^{N}
    ///       R_{n1-1}((a1+1-i, a2,...), (ratio_a, s2,...); (b2,...), (t2,...))
    ///       / (n1^(i+b1-1) * t1^n1)
    /// + sum_{i=1}^{b1} C(i+a1-2, a1-1) sum_{n1=1}^{N}
    ///       R_{n1-1}((a2,...), (s2,...); (b1+1-i, b2,...), (ratio_b, t2,...))
    ///       / (n1^(i+a1-1) * s1^n1)
    /// ```
    ///
    /// where under [`RatioOrientation::OwnOverOther`] the demoted index
    /// carries `ratio_a = s1/t1` on the first family and `ratio_b = t1/s1`
    /// on the second. The inner sums are prefix sums over one shared child
    /// table, so a full column costs `O(N * (a1+b1))` rational operations
    /// past the recursion.
    pub fn r_weighted_recurrence(
        &self,
        n: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
        orientation: RatioOrientation,
    ) -> Rational {
        self.r_weighted_recurrence_table(n, a, b, orientation)[n].clone()
    }

    /// The whole column `R_0, ..., R_n` of the recurrence route.
    pub fn r_weighted_recurrence_table(
        &self,
        n: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
        orientation: RatioOrientation,
    ) -> Arc<Vec<Rational>> {
        if a.is_empty() {
            return self.table(b, n);
        }
        if b.is_empty() {
            return self.table(a, n);
        }
        let key = ((a.clone(), b.clone()), orientation);
        if let Some(table) = self.recurrence_tables.lock().unwrap().get(&key) {
            if table.len() > n {
                return Arc::clone(table);
            }
        }

        let (a1, s1) = a.first().expect("nonempty");
        let (b1, t1) = b.first().expect("nonempty");
        let (s1, t1) = (s1.clone(), t1.clone());
        let a_tail = a.tail();
        let b_tail = b.tail();
        let mut values = vec![Rational::zero(); n + 1];

        let child_horizon = n.saturating_sub(1);
        let accumulate_family =
            |values: &mut Vec<Rational>,
             head: u32,
             other_head: u32,
             ratio: Rational,
             outer_weight: &Rational,
             demoted_tail: &WeightedComposition,
             other_tail: &WeightedComposition,
             demote_first: bool| {
                for i in 1..=head {
                    let child_head = WeightedComposition::cons(
                        head + 1 - i,
                        ratio.clone(),
                        demoted_tail,
                    )
                    .expect("ratios of nonzero weights are nonzero");
                    let child = if demote_first {
                        self.r_weighted_recurrence_table(
                            child_horizon,
                            &child_head,
                            other_tail,
                            orientation,
                        )
                    } else {
                        self.r_weighted_recurrence_table(
                            child_horizon,
                            other_tail,
                            &child_head,
                            orientation,
                        )
                    };
                    let coefficient = Rational::from_integer(binomial(
                        (i + other_head - 2) as u64,
                        (other_head - 1) as u64,
                    ));
                    let exponent = i + other_head - 1;
                    let unweighted = outer_weight.is_one();
                    let mut outer_power = Rational::one();
                    let mut running = Rational::zero();
                    for n1 in 1..=n {
                        let mut term = &child[n1 - 1]
                            / Rational::from_integer(int_pow(n1 as u64, exponent));
                        if !unweighted {
                            outer_power *= outer_weight;
                            term /= &outer_power;
                        }
                        running += term;
                        values[n1] += &coefficient * &running;
                    }
                }
            };

        let ratio_a = match orientation {
            RatioOrientation::OwnOverOther => &s1 / &t1,
            RatioOrientation::OtherOverOwn => &t1 / &s1,
        };
        let ratio_b = match orientation {
            RatioOrientation::OwnOverOther => &t1 / &s1,
            RatioOrientation::OtherOverOwn => &s1 / &t1,
        };
        accumulate_family(&mut values, a1, b1, ratio_a, &t1, &a_tail, &b_tail, true);
        accumulate_family(&mut values, b1, a1, ratio_b, &s1, &b_tail, &a_tail, false);

        let fresh = Arc::new(values);
        let mut tables = self.recurrence_tables.lock().unwrap();
        let slot = tables.entry(key).or_insert_with(|| Arc::clone(&fresh));
        if slot.len() < fresh.len() {
            *slot = Arc::clone(&fresh);
        }
        Arc::clone(slot)
    }

    /// Cross sum through the shuffle algebra:
    /// `R_n(a; b) = sum coeff_c * zeta_n(c)` over the decomposition of
    /// `code(a) ⧢ code(b)`.
    pub fn r_shuffle(&self, n: usize, a: &Composition, b: &Composition) -> Rational {
        let mut total = Rational::zero();
        for (coefficient, composition) in self.shuffle_terms(a, b).iter() {
            total += coefficient * self.zeta(n, composition);
        }
        total
    }

    /// Cross sum through the series product; see [`crate::series`]. Both
    /// compositions must be nonempty.
    pub fn r_via_series(
        &self,
        n: usize,
        a: &Composition,
        b: &Composition,
    ) -> Result<Rational, Error> {
        crate::series::r_via_series(n, a, b)
    }

    /// First split sum of the weighted reciprocity identity:
    ///
    /// ```text
    /// sum_{k=1}^{j}     zeta_{k-1}(b2,t2) zeta_{n-k}(a,s) / (k^b1 t1^k)
    /// + sum_{k=1}^{n+1-j} zeta_{k-1}(a2,s2) zeta_{n-k}(b,t) / (k^a1 s1^k)
    /// ```
    fn split_lhs_weighted(
        &self,
        n: usize,
        j: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
    ) -> Rational {
        let (a1, s1) = a.first().expect("nonempty");
        let (b1, t1) = b.first().expect("nonempty");
        let (s1, t1) = (s1.clone(), t1.clone());
        let a_table = self.table(a, n);
        let b_table = self.table(b, n);
        let a_tail_table = self.table(&a.tail(), n);
        let b_tail_table = self.table(&b.tail(), n);

        let half_sum = |limit: usize,
                            outer_exponent: u32,
                            outer_weight: &Rational,
                            tail_table: &[Rational],
                            full_table: &[Rational]| {
            let unweighted = outer_weight.is_one();
            let mut weight_power = Rational::one();
            let mut total = Rational::zero();
            for k in 1..=limit {
                if !unweighted {
                    weight_power *= outer_weight;
                }
                let tail_factor = &tail_table[k - 1];
                if tail_factor.is_zero() {
                    continue;
                }
                let mut term = tail_factor * &full_table[n - k];
                term /= Rational::from_integer(int_pow(k as u64, outer_exponent));
                if !unweighted {
                    term /= &weight_power;
                }
                total += term;
            }
            total
        };

        half_sum(j, b1, &t1, &b_tail_table, &a_table)
            + half_sum(n + 1 - j, a1, &s1, &a_tail_table, &b_table)
    }

    /// Full split identity in the weighted setting: for `1 <= j <= n`,
    ///
    /// ```text
    /// lhs(j) = zeta_{n+1-j}(a,s) zeta_j(b,t)
    ///        - zeta_{j-1}(b2,t2) zeta_{n-j}(a2,s2)
    ///          / (t1^j j^b1 s1^(n+1-j) (n+1-j)^a1)
    ///        + R_n(a,s; b,t)
    /// ```
    ///
    /// with `R_n` taken from the weighted direct route. Residual must be 0.
    pub fn check_weighted_reciprocity(
        &self,
        n: usize,
        j: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
    ) -> Result<ReciprocityReport, Error> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if j < 1 || j > n {
            return Err(Error::SplitOutOfRange { j, n });
        }
        let cross = self.r_weighted_direct(n, a, b);
        Ok(self.weighted_report(n, j, a, b, cross))
    }

    fn weighted_report(
        &self,
        n: usize,
        j: usize,
        a: &WeightedComposition,
        b: &WeightedComposition,
        cross: Rational,
    ) -> ReciprocityReport {
        let (a1, s1) = a.first().expect("nonempty");
        let (b1, t1) = b.first().expect("nonempty");
        let (s1, t1) = (s1.clone(), t1.clone());

        let lhs = self.split_lhs_weighted(n, j, a, b);

        let products = self.zeta_weighted(n + 1 - j, a) * self.zeta_weighted(j, b);
        let mut boundary =
            self.zeta_weighted(j - 1, &b.tail()) * self.zeta_weighted(n - j, &a.tail());
        if !boundary.is_zero() {
            boundary /= Rational::from_integer(
                int_pow(j as u64, b1) * int_pow((n + 1 - j) as u64, a1),
            );
            if !t1.is_one() {
                boundary /= t1.pow(j as i32);
            }
            if !s1.is_one() {
                boundary /= s1.pow((n + 1 - j) as i32);
            }
        }
        let rhs = products - boundary + cross;
        ReciprocityReport::new(n, j, lhs, rhs)
    }

    /// Split identity for plain finite zeta values, with the cross sum
    /// `R_n(a; b)` taken from the shuffle route. For the smallest case
    /// `n = 2, j = 1, a = b = (1)` both sides equal 2.
    pub fn check_reciprocity(
        &self,
        n: usize,
        j: usize,
        a: &Composition,
        b: &Composition,
    ) -> Result<ReciprocityReport, Error> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if j < 1 || j > n {
            return Err(Error::SplitOutOfRange { j, n });
        }
        let cross = self.r_shuffle(n, a, b);
        Ok(self.weighted_report(
            n,
            j,
            &WeightedComposition::unweighted(a.clone()),
            &WeightedComposition::unweighted(b.clone()),
            cross,
        ))
    }

    /// Complementary split identity, which counts the two partial sums
    /// from the far ends. For `1 <= j <= n`:
    ///
    /// ```text
    /// lhs(j) = sum_{k=1}^{j-1} zeta_k(b) zeta_{n-k-1}(a2) / (n-k)^a1
    ///        + sum_{k=1}^{n-j} zeta_k(a) zeta_{n-k-1}(b2) / (n-k)^b1
    ///
    /// rhs(j) = zeta_{j-1}(b) zeta_{n-j}(a2) / (n+1-j)^a1
    ///        + zeta_{n-j}(a) zeta_{j-1}(b2) / j^b1
    ///        - zeta_{n+1-j}(a) zeta_j(b)
    ///        + zeta_{j-1}(b2) zeta_{n-j}(a2) / (j^b1 (n+1-j)^a1)
    ///        + R_n(a; b)
    /// ```
    ///
    /// The same call also re-derives the recombination law (see
    /// [`Evaluator::check_recombination`]) under debug assertions.
    pub fn check_complementary(
        &self,
        n: usize,
        j: usize,
        a: &Composition,
        b: &Composition,
    ) -> Result<ReciprocityReport, Error> {
        let (Some(a1), Some(b1)) = (a.first(), b.first()) else {
            return Err(Error::EmptyComposition);
        };
        if j < 1 || j > n {
            return Err(Error::SplitOutOfRange { j, n });
        }

        let a_unweighted = WeightedComposition::unweighted(a.clone());
        let b_unweighted = WeightedComposition::unweighted(b.clone());
        let a_table = self.table(&a_unweighted, n);
        let b_table = self.table(&b_unweighted, n);
        let a_tail_table = self.table(&WeightedComposition::unweighted(a.tail()), n);
        let b_tail_table = self.table(&WeightedComposition::unweighted(b.tail()), n);

        let mut lhs = Rational::zero();
        for k in 1..=j - 1 {
            let tail_factor = &a_tail_table[n - k - 1];
            if tail_factor.is_zero() {
                continue;
            }
            lhs += &b_table[k] * tail_factor
                / Rational::from_integer(int_pow((n - k) as u64, a1));
        }
        for k in 1..=n - j {
            let tail_factor = &b_tail_table[n - k - 1];
            if tail_factor.is_zero() {
                continue;
            }
            lhs += &a_table[k] * tail_factor
                / Rational::from_integer(int_pow((n - k) as u64, b1));
        }

        let mut rhs = &b_table[j - 1] * &a_tail_table[n - j]
            / Rational::from_integer(int_pow((n + 1 - j) as u64, a1));
        rhs += &a_table[n - j] * &b_tail_table[j - 1]
            / Rational::from_integer(int_pow(j as u64, b1));
        rhs -= &a_table[n + 1 - j] * &b_table[j];
        rhs += &b_tail_table[j - 1] * &a_tail_table[n - j]
            / Rational::from_integer(
                int_pow(j as u64, b1) * int_pow((n + 1 - j) as u64, a1),
            );
        rhs += self.r_shuffle(n, a, b);

        #[cfg(debug_assertions)]
        {
            let recombined = self.check_recombination(n, j, a, b)?;
            debug_assert!(
                recombined.ok(),
                "split sums fail to recombine at N={n} j={j} a={a} b={b}"
            );
        }

        Ok(ReciprocityReport::new(n, j, lhs, rhs))
    }

    /// The recombination law behind the complementary identity: adding the
    /// split sum of [`Evaluator::check_reciprocity`] to the complementary
    /// split sum collapses the telescopes, leaving twice the cross sum
    /// plus two boundary products:
    ///
    /// ```text
    /// lhs_split(j) + lhs_complementary(j) =
    ///     2 R_n(a; b) + zeta_{j-1}(b) zeta_{n-j}(a2) / (n+1-j)^a1
    ///                 + zeta_{n-j}(a) zeta_{j-1}(b2) / j^b1
    /// ```
    pub fn check_recombination(
        &self,
        n: usize,
        j: usize,
        a: &Composition,
        b: &Composition,
    ) -> Result<ReciprocityReport, Error> {
        let (Some(a1), Some(b1)) = (a.first(), b.first()) else {
            return Err(Error::EmptyComposition);
        };
        if j < 1 || j > n {
            return Err(Error::SplitOutOfRange { j, n });
        }

        let a_unweighted = WeightedComposition::unweighted(a.clone());
        let b_unweighted = WeightedComposition::unweighted(b.clone());
        let a_table = self.table(&a_unweighted, n);
        let b_table = self.table(&b_unweighted, n);
        let a_tail_table = self.table(&WeightedComposition::unweighted(a.tail()), n);
        let b_tail_table = self.table(&WeightedComposition::unweighted(b.tail()), n);

        let mut lhs = self.split_lhs_weighted(n, j, &a_unweighted, &b_unweighted);
        for k in 1..=j - 1 {
            lhs += &b_table[k] * &a_tail_table[n - k - 1]
                / Rational::from_integer(int_pow((n - k) as u64, a1));
        }
        for k in 1..=n - j {
            lhs += &a_table[k] * &b_tail_table[n - k - 1]
                / Rational::from_integer(int_pow((n - k) as u64, b1));
        }

        let mut rhs = self.r_shuffle(n, a, b) * Rational::from_integer(2.into());
        rhs += &b_table[j - 1] * &a_tail_table[n - j]
            / Rational::from_integer(int_pow((n + 1 - j) as u64, a1));
        rhs += &a_table[n - j] * &b_tail_table[j - 1]
            / Rational::from_integer(int_pow(j as u64, b1));

        Ok(ReciprocityReport::new(n, j, lhs, rhs))
    }

    /// Central-split gap against the infinite products. With the window
    /// `N = 2n+1` split at `j = n+1`, the split sum approaches
    /// `2 * zeta(a) * zeta(b)` as `n` grows. This returns
    /// `| lhs(n) - 2 * zeta_M(a) * zeta_M(b) |` exactly, with the infinite
    /// values truncated at horizon `M >= 2n+1`. Both leading exponents
    /// must be at least 2 so the reference products converge.
    pub fn asymptotic_gap(
        &self,
        n: usize,
        a: &Composition,
        b: &Composition,
        horizon: usize,
    ) -> Result<Rational, Error> {
        let (Some(a1), Some(b1)) = (a.first(), b.first()) else {
            return Err(Error::EmptyComposition);
        };
        if a1 < 2 || b1 < 2 {
            return Err(Error::DivergentSeries);
        }
        let window = 2 * n + 1;
        if horizon < window {
            return Err(Error::HorizonTooSmall { horizon, window });
        }
        let lhs = self.split_lhs_weighted(
            window,
            n + 1,
            &WeightedComposition::unweighted(a.clone()),
            &WeightedComposition::unweighted(b.clone()),
        );
        let reference = Rational::from_integer(2.into())
            * self.zeta(horizon, a)
            * self.zeta(horizon, b);
        Ok((lhs - reference).abs())
    }
}

/// Direct cross sum with a fresh [`Evaluator`].
pub fn r_direct(n: usize, a: &Composition, b: &Composition) -> Rational {
    Evaluator::new().r_direct(n, a, b)
}

/// Recurrence cross sum with a fresh [`Evaluator`].
pub fn r_recurrence(n: usize, a: &Composition, b: &Composition) -> Rational {
    Evaluator::new().r_recurrence(n, a, b)
}

/// Shuffle cross sum with a fresh [`Evaluator`].
pub fn r_shuffle(n: usize, a: &Composition, b: &Composition) -> Rational {
    Evaluator::new().r_shuffle(n, a, b)
}

/// Weighted direct cross sum with a fresh [`Evaluator`].
pub fn r_weighted_direct(
    n: usize,
    a: &WeightedComposition,
    b: &WeightedComposition,
) -> Rational {
    Evaluator::new().r_weighted_direct(n, a, b)
}

/// Weighted recurrence cross sum with a fresh [`Evaluator`].
pub fn r_weighted_recurrence(
    n: usize,
    a: &WeightedComposition,
    b: &WeightedComposition,
    orientation: RatioOrientation,
) -> Rational {
    Evaluator::new().r_weighted_recurrence(n, a, b, orientation)
}

/// Split identity check with a fresh [`Evaluator`].
pub fn check_reciprocity(
    n: usize,
    j: usize,
    a: &Composition,
    b: &Composition,
) -> Result<ReciprocityReport, Error> {
    Evaluator::new().check_reciprocity(n, j, a, b)
}

/// Complementary split identity check with a fresh [`Evaluator`].
pub fn check_complementary(
    n: usize,
    j: usize,
    a: &Composition,
    b: &Composition,
) -> Result<ReciprocityReport, Error> {
    Evaluator::new().check_complementary(n, j, a, b)
}

/// Weighted split identity check with a fresh [`Evaluator`].
pub fn check_weighted_reciprocity(
    n: usize,
    j: usize,
    a: &WeightedComposition,
    b: &WeightedComposition,
) -> Result<ReciprocityReport, Error> {
    Evaluator::new().check_weighted_reciprocity(n, j, a, b)
}

/// Central-split gap with a fresh [`Evaluator`].
pub fn asymptotic_gap(
    n: usize,
    a: &Composition,
    b: &Composition,
    horizon: usize,
) -> Result<Rational, Error> {
    Evaluator::new().asymptotic_gap(n, a, b, horizon)
}
