//! Scalar helpers: arbitrary-precision rationals and small integer
//! combinatorics used throughout the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Error;

/// The scalar type of the crate: a ratio of big integers, always kept in
/// lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `numer/denom` as a rational in lowest terms. Panics on a zero
/// denominator; use [`parse_rational`] for untrusted input.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or a bare integer `"p"`. Rejects zero denominators.
/// The output is normalised, so `"2/4"` and `"1/2"` parse to the same
/// value and print as `1/2`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let err = || Error::Parse {
        expected: "rational number p/q",
        text: text.to_owned(),
    };
    let trimmed = text.trim();
    let (numer_text, denom_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n, d),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer_text.trim().parse().map_err(|_| err())?;
    let denom: BigInt = denom_text.trim().parse().map_err(|_| err())?;
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

/// Binomial coefficient `C(n, k)` by the exact multiplicative rule; each
/// intermediate division is exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

/// `base^exp` as a big integer.
pub fn int_pow(base: u64, exp: u32) -> BigInt {
    let base = BigInt::from(base);
    let mut result = BigInt::one();
    for _ in 0..exp {
        result *= &base;
    }
    result
}

/// `1 / base^exp` as a rational; `base` must be nonzero.
pub fn inverse_power(base: u64, exp: u32) -> Rational {
    Rational::new(BigInt::one(), int_pow(base, exp))
}

/// Nearest `f64`, for display only; exact comparisons must stay rational.
pub fn approximate(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
