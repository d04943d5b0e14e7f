//! The generating-series route to finite multiple zeta values.
//!
//! The polylogarithm-style series of a nonempty composition `a` is
//!
//! ```text
//! Li_a(z) = sum_{n1 > n2 > ... > nr >= 1} z^n1 / (n1^a1 * ... * nr^ar),
//! ```
//!
//! whose coefficient of `z^n` is exactly `zeta_{n-1}(a2,...,ar) / n^a1`.
//! Multiplying two such series and dividing by `1 - z` (a running prefix
//! sum) packs every cross sum `R_n(a; b)` for `n` up to the truncation
//! order into a single coefficient list; [`crate::identities`] computes the
//! same cross sum by three other routes. Key items: [`PowerSeries`],
//! [`polylog_series`], [`series_mul`], [`divide_one_minus_z`],
//! [`r_via_series`], [`check_polylog_shuffle`].

use num_traits::Zero;

use crate::rational::{int_pow, Rational};
use crate::words::{shuffle_compositions, Composition};
use crate::zeta::zeta_table;
use crate::Error;

/// A truncated power series: exact coefficients for `z^0 ..= z^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<Rational>,
}

impl PowerSeries {
    /// Wraps a coefficient list; it must cover at least `z^0`.
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a truncated series carries at least the constant term"
        );
        PowerSeries { coefficients }
    }

    /// The series `0` truncated at `order`.
    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![Rational::zero(); order + 1])
    }

    /// Highest exponent the truncation covers.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `z^n`; panics past [`PowerSeries::order`].
    pub fn coefficient(&self, n: usize) -> &Rational {
        &self.coefficients[n]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Rational> {
        self.coefficients
    }

    pub fn add_scaled(&mut self, scale: &Rational, other: &PowerSeries) {
        let order = self.order().min(other.order());
        self.coefficients.truncate(order + 1);
        for (own, term) in self.coefficients.iter_mut().zip(&other.coefficients) {
            *own += scale * term;
        }
    }
}

/// The series of a nonempty composition, truncated at `order`.
pub fn polylog_series(a: &Composition, order: usize) -> Result<PowerSeries, Error> {
    let Some(a1) = a.first() else {
        return Err(Error::EmptyComposition);
    };
    let mut coefficients = Vec::with_capacity(order + 1);
    coefficients.push(Rational::zero());
    if order >= 1 {
        let tail = zeta_table(order - 1, &a.tail());
        for n in 1..=order {
            coefficients
                .push(tail.value(n - 1) / Rational::from_integer(int_pow(n as u64, a1)));
        }
    }
    Ok(PowerSeries::new(coefficients))
}

/// Cauchy product, truncated at the smaller of the two orders.
pub fn series_mul(p: &PowerSeries, q: &PowerSeries) -> PowerSeries {
    let order = p.order().min(q.order());
    let mut coefficients = vec![Rational::zero(); order + 1];
    for i in 0..=order {
        let left = p.coefficient(i);
        if left.is_zero() {
            continue;
        }
        for j in 0..=order - i {
            let right = q.coefficient(j);
            if !right.is_zero() {
                coefficients[i + j] += left * right;
            }
        }
    }
    PowerSeries::new(coefficients)
}

/// Multiplication by `1/(1-z)`: the coefficients become prefix sums.
pub fn divide_one_minus_z(p: &PowerSeries) -> PowerSeries {
    let mut coefficients = Vec::with_capacity(p.order() + 1);
    let mut running = Rational::zero();
    for coefficient in p.coefficients() {
        running += coefficient;
        coefficients.push(running.clone());
    }
    PowerSeries::new(coefficients)
}

/// All cross sums `R_0(a;b), ..., R_n(a;b)` from one series product:
/// `R_m(a; b) = [z^m] Li_a(z) * Li_b(z) / (1 - z)`. Both compositions must
/// be nonempty.
pub fn r_via_series_table(
    n: usize,
    a: &Composition,
    b: &Composition,
) -> Result<Vec<Rational>, Error> {
    let product = series_mul(&polylog_series(a, n)?, &polylog_series(b, n)?);
    Ok(divide_one_minus_z(&product).into_coefficients())
}

/// The single cross sum `R_n(a; b)` via the series route.
pub fn r_via_series(n: usize, a: &Composition, b: &Composition) -> Result<Rational, Error> {
    let mut table = r_via_series_table(n, a, b)?;
    Ok(table.pop().expect("table covers z^0 ..= z^n"))
}

/// Outcome of comparing `Li_a * Li_b` against the shuffle decomposition
/// `sum_c coeff_c * Li_c` coefficient by coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolylogShuffleCheck {
    /// All coefficients up to the truncation order agree exactly.
    Verified { order: usize },
    /// The first exponent where the two series part ways.
    Mismatch {
        exponent: usize,
        product: Rational,
        combination: Rational,
    },
}

impl PolylogShuffleCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, PolylogShuffleCheck::Verified { .. })
    }
}

fn compare_series(product: &PowerSeries, combination: &PowerSeries) -> PolylogShuffleCheck {
    let order = product.order().min(combination.order());
    for exponent in 0..=order {
        if product.coefficient(exponent) != combination.coefficient(exponent) {
            return PolylogShuffleCheck::Mismatch {
                exponent,
                product: product.coefficient(exponent).clone(),
                combination: combination.coefficient(exponent).clone(),
            };
        }
    }
    PolylogShuffleCheck::Verified { order }
}

/// Checks the multiplicativity of the series assignment under the shuffle
/// product: `Li_a * Li_b` must match the shuffle decomposition of
/// `code(a) ⧢ code(b)` summed term by term, exactly, up to `order`.
pub fn check_polylog_shuffle(
    a: &Composition,
    b: &Composition,
    order: usize,
) -> Result<PolylogShuffleCheck, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let product = series_mul(&polylog_series(a, order)?, &polylog_series(b, order)?);
    let mut combination = PowerSeries::zero(order);
    for (coefficient, composition) in shuffle_compositions(a, b) {
        combination.add_scaled(&coefficient, &polylog_series(&composition, order)?);
    }
    Ok(compare_series(&product, &combination))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn harmonic_series_coefficients() {
        let series = polylog_series(&comp(&[1]), 3).unwrap();
        assert_eq!(
            series.coefficients(),
            &[integer(0), integer(1), ratio(1, 2), ratio(1, 3)][..]
        );
    }

    #[test]
    fn depth_one_and_depth_two_coefficients() {
        let series = polylog_series(&comp(&[3]), 2).unwrap();
        assert_eq!(
            series.coefficients(),
            &[integer(0), integer(1), ratio(1, 8)][..]
        );
        // Coefficient of z^n is zeta_{n-1}(1) / n^2.
        let series = polylog_series(&comp(&[2, 1]), 3).unwrap();
        assert_eq!(
            series.coefficients(),
            &[integer(0), integer(0), ratio(1, 4), ratio(1, 6)][..]
        );
    }

    #[test]
    fn order_zero_series_is_just_the_vanishing_constant() {
        let series = polylog_series(&comp(&[5, 2]), 0).unwrap();
        assert_eq!(series.coefficients(), &[integer(0)][..]);
    }

    #[test]
    fn empty_composition_has_no_series() {
        assert_eq!(
            polylog_series(&Composition::empty(), 4),
            Err(Error::EmptyComposition)
        );
        assert_eq!(
            check_polylog_shuffle(&Composition::empty(), &comp(&[1]), 4),
            Err(Error::EmptyComposition)
        );
    }

    #[test]
    fn product_truncates_to_smaller_order() {
        let p = polylog_series(&comp(&[1]), 5).unwrap();
        let q = polylog_series(&comp(&[1]), 3).unwrap();
        let product = series_mul(&p, &q);
        assert_eq!(product.order(), 3);
        // [z^2] Li_1^2 = 2 * zeta_1(1)/2 = 1.
        assert_eq!(product.coefficient(2), &integer(1));
        assert_eq!(series_mul(&q, &p), product);
    }

    #[test]
    fn dividing_by_one_minus_z_takes_prefix_sums() {
        let p = PowerSeries::new(vec![integer(1), integer(0), integer(0)]);
        assert_eq!(
            divide_one_minus_z(&p).coefficients(),
            &[integer(1), integer(1), integer(1)][..]
        );
        let p = PowerSeries::new(vec![integer(0), ratio(1, 2), ratio(-1, 2)]);
        assert_eq!(
            divide_one_minus_z(&p).coefficients(),
            &[integer(0), ratio(1, 2), integer(0)][..]
        );
    }

    #[test]
    fn cross_sum_via_series_matches_hand_values() {
        assert_eq!(
            r_via_series(2, &comp(&[1]), &comp(&[1])).unwrap(),
            integer(1)
        );
        assert_eq!(
            r_via_series(0, &comp(&[2]), &comp(&[1])).unwrap(),
            integer(0)
        );
        let table = r_via_series_table(6, &comp(&[1]), &comp(&[1])).unwrap();
        assert_eq!(table.len(), 7);
        assert_eq!(table[2], integer(1));
    }

    #[test]
    fn shuffle_identity_verifies_on_small_pairs() {
        for (a, b) in [
            (vec![1], vec![1]),
            (vec![2], vec![2]),
            (vec![2], vec![3]),
            (vec![2, 1], vec![1]),
            (vec![1, 1], vec![2, 1]),
        ] {
            let check = check_polylog_shuffle(&comp(&a), &comp(&b), 12).unwrap();
            assert_eq!(check, PolylogShuffleCheck::Verified { order: 12 });
        }
    }

    #[test]
    fn comparison_pinpoints_the_first_mismatch() {
        let p = PowerSeries::new(vec![integer(0), integer(1), ratio(1, 2)]);
        let mut q = p.clone();
        q = PowerSeries::new({
            let mut c = q.into_coefficients();
            c[2] += ratio(1, 7);
            c
        });
        match compare_series(&p, &q) {
            PolylogShuffleCheck::Mismatch {
                exponent,
                product,
                combination,
            } => {
                assert_eq!(exponent, 2);
                assert_eq!(product, ratio(1, 2));
                assert_eq!(combination, ratio(9, 14));
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
        assert!(compare_series(&p, &p).is_verified());
    }
}
