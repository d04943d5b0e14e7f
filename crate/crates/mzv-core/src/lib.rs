//! Exact arithmetic for finite multiple zeta values.
//!
//! A finite multiple zeta value truncates the usual nested series at a
//! finite horizon:
//!
//! ```text
//! zeta_N(a1,...,ar) = sum over N >= n1 > n2 > ... > nr >= 1 of
//!                     1 / (n1^a1 * n2^a2 * ... * nr^ar)
//! ```
//!
//! Everything here is computed over arbitrary-precision rationals, so
//! identities can be checked bit-exactly rather than to floating-point
//! tolerance. The crate is organised around four views of the same objects:
//!
//! * [`words`]: compositions encoded as binary words and the shuffle
//!   product on them,
//! * [`zeta`]: tabulation of `zeta_N`, including weighted variants with a
//!   geometric factor per index,
//! * [`series`]: the polylogarithm generating-series route to the same
//!   numbers,
//! * [`identities`]: cross-sum reciprocity relations tying all of the
//!   above together, with exact residual reports.

pub mod identities;
pub mod rational;
pub mod series;
pub mod words;
pub mod zeta;

pub use identities::{Evaluator, RatioOrientation, ReciprocityReport};
pub use rational::{parse_rational, Rational};
pub use words::{Composition, Letter, Word, WordPolynomial};
pub use zeta::{WeightedComposition, ZetaTable};

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A word was fed to the zeta evaluation map without being the code of
    /// a composition (nonempty words must end in the unit letter).
    #[error("word {0:?} is not the code of a composition")]
    WordNotComposition(String),
    /// Composition parts are exponents of the summation variables and must
    /// be at least 1.
    #[error("composition parts must be >= 1")]
    ZeroPart,
    /// The operation needs at least one index on each side.
    #[error("operation requires a nonempty composition")]
    EmptyComposition,
    /// Explicit interleaving enumeration was asked to produce more terms
    /// than the guard allows; use the recursive shuffle instead.
    #[error("{interleavings} interleavings exceed the enumeration guard of {limit}")]
    EnumerationTooLarge { interleavings: u128, limit: u128 },
    /// Index weights scale each summand by weight^(-n) and must be nonzero.
    #[error("index weights must be nonzero")]
    ZeroWeight,
    /// A weighted composition needs exactly one weight per part.
    #[error("composition has {parts} parts but {weights} weights")]
    WeightCountMismatch { parts: usize, weights: usize },
    /// The split point of a reciprocity check must satisfy 1 <= j <= N.
    #[error("split point j={j} lies outside 1..={n}")]
    SplitOutOfRange { j: usize, n: usize },
    /// Tail comparisons against the infinite series need a convergent
    /// leading index, i.e. a first exponent of at least 2.
    #[error("leading exponent must be >= 2 for a convergent series")]
    DivergentSeries,
    /// The truncation horizon must cover the window being compared.
    #[error("horizon M={horizon} is smaller than the window N={window}")]
    HorizonTooSmall { horizon: usize, window: usize },
    /// A textual argument could not be parsed.
    #[error("cannot parse {text:?} as {expected}")]
    Parse {
        expected: &'static str,
        text: String,
    },
}
