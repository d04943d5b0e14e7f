//! Binary words, compositions, and the shuffle algebra connecting them.
//!
//! A composition `(a1,...,ar)` of positive integers is encoded as a word
//! over the two-letter alphabet `{0, 1}`:
//!
//! ```text
//! (a1,...,ar)  <->  0^(a1-1) 1  0^(a2-1) 1  ...  0^(ar-1) 1
//! ```
//!
//! The word length equals the weight `a1+...+ar`, and a word is the code of
//! a composition exactly when it is empty or ends in `1`. The shuffle
//! product `u ⧢ v` is the sum of all interleavings of `u` and `v` that
//! preserve the internal order of each word; it is commutative, associative,
//! and its coefficients total `C(|u|+|v|, |u|)`. Key items: [`Word`],
//! [`Composition`], [`WordPolynomial`], [`shuffle_recursive`],
//! [`shuffle_enumerate`], [`shuffle_by_first_block`], [`depth_one_shuffle`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::rational::{binomial, Rational};
use crate::Error;

/// Explicit interleaving enumeration refuses to produce more than this many
/// summands; the recursive shuffle has no such cap.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

/// One letter of the binary alphabet. `Zero` marks a unit step of an
/// exponent block, `One` closes the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    One,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Zero => "0",
            Letter::One => "1",
        })
    }
}

/// A finite word over [`Letter`]. Words are ordered by length first, then
/// lexicographically with `0 < 1`, which makes serialised polynomials
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The block `0^zeros 1`, the code of the single-part composition
    /// `(zeros + 1)`.
    pub fn block(zeros: u32) -> Self {
        let mut letters = vec![Letter::Zero; zeros as usize];
        letters.push(Letter::One);
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// The empty word prints as `ε`; everything else as its letters, e.g.
    /// `0011`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for letter in &self.letters {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.trim().chars() {
            match c {
                '0' => letters.push(Letter::Zero),
                '1' => letters.push(Letter::One),
                _ => {
                    return Err(Error::Parse {
                        expected: "binary word over {0,1}",
                        text: text.to_owned(),
                    })
                }
            }
        }
        Ok(Word { letters })
    }
}

/// A composition: a finite (possibly empty) sequence of integers >= 1.
/// The derived order is lexicographic on the parts, e.g. `(2,2) < (3,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Validates that every part is at least 1.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self, Error> {
        let parts = parts.into();
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition(parts))
    }

    /// The empty composition, whose zeta value is 1 by convention.
    pub fn empty() -> Self {
        Composition::default()
    }

    /// `(first, rest...)` from a head part and an existing tail.
    pub fn cons(first: u32, tail: &Composition) -> Result<Self, Error> {
        if first == 0 {
            return Err(Error::ZeroPart);
        }
        let mut parts = Vec::with_capacity(1 + tail.0.len());
        parts.push(first);
        parts.extend_from_slice(&tail.0);
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the parts; equals the length of the word code.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Everything after the first part; empty stays empty.
    pub fn tail(&self) -> Composition {
        Composition(self.0.iter().skip(1).copied().collect())
    }
}

impl fmt::Display for Composition {
    /// `(2,1)` for nonempty compositions, `()` for the empty one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses the plain comma form `2,1`; every part must be >= 1.
    fn from_str(text: &str) -> Result<Self, Error> {
        let err = || Error::Parse {
            expected: "composition like 2,1",
            text: text.to_owned(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err());
        }
        let mut parts = Vec::new();
        for piece in trimmed.split(',') {
            let part: u32 = piece.trim().parse().map_err(|_| err())?;
            if part == 0 {
                return Err(Error::ZeroPart);
            }
            parts.push(part);
        }
        Ok(Composition(parts))
    }
}

/// The word code of a composition.
pub fn composition_to_word(composition: &Composition) -> Word {
    let mut letters = Vec::with_capacity(composition.weight() as usize);
    for &part in composition.parts() {
        letters.extend(std::iter::repeat_n(Letter::Zero, part as usize - 1));
        letters.push(Letter::One);
    }
    Word::from_letters(letters)
}

/// Inverse of [`composition_to_word`]. Fails unless the word is empty or
/// ends in `1`.
pub fn word_to_composition(word: &Word) -> Result<Composition, Error> {
    if word.is_empty() {
        return Ok(Composition::empty());
    }
    if *word.letters().last().unwrap() != Letter::One {
        return Err(Error::WordNotComposition(word.to_string()));
    }
    let mut parts = Vec::new();
    let mut zeros = 0u32;
    for letter in word.letters() {
        match letter {
            Letter::Zero => zeros += 1,
            Letter::One => {
                parts.push(zeros + 1);
                zeros = 0;
            }
        }
    }
    Ok(Composition(parts))
}

/// A finite linear combination of words with rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl WordPolynomial {
    pub fn zero() -> Self {
        WordPolynomial::default()
    }

    /// The empty word with coefficient 1: the unit of the shuffle algebra.
    pub fn unit() -> Self {
        WordPolynomial::from_word(Word::empty())
    }

    pub fn from_word(word: Word) -> Self {
        let mut poly = WordPolynomial::zero();
        poly.add_term(word, Rational::one());
        poly
    }

    /// Adds `coefficient * word`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, word: Word, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, scale: &Rational, other: &WordPolynomial) {
        for (word, coefficient) in other.terms() {
            self.add_term(word.clone(), scale * coefficient);
        }
    }

    pub fn plus(&self, other: &WordPolynomial) -> WordPolynomial {
        let mut sum = self.clone();
        sum.add_scaled(&Rational::one(), other);
        sum
    }

    pub fn scaled(&self, scale: &Rational) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        out.add_scaled(scale, self);
        out
    }

    /// The polynomial with `prefix` glued onto the front of every word.
    pub fn prepended(&self, prefix: &Word) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        for (word, coefficient) in self.terms() {
            out.add_term(prefix.concat(word), coefficient.clone());
        }
        out
    }

    /// Terms in the canonical word order (length, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of all coefficients; for `u ⧢ v` this is `C(|u|+|v|, |u|)`.
    pub fn total_coefficient(&self) -> Rational {
        let mut total = Rational::zero();
        for coefficient in self.terms.values() {
            total += coefficient;
        }
        total
    }
}

impl fmt::Display for WordPolynomial {
    /// Terms joined by ` + ` in canonical order, e.g. `4*0011 + 2*0101`;
    /// the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (word, coefficient)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{coefficient}*{word}")?;
        }
        Ok(())
    }
}

/// Shuffle product by the standard recursion: `ε ⧢ w = w ⧢ ε = w` and
/// `xu ⧢ yv = x(u ⧢ yv) + y(xu ⧢ v)`.
pub fn shuffle_recursive(u: &Word, v: &Word) -> WordPolynomial {
    fn go(
        prefix: &mut Vec<Letter>,
        u: &[Letter],
        v: &[Letter],
        out: &mut WordPolynomial,
    ) {
        if u.is_empty() || v.is_empty() {
            let mut letters = prefix.clone();
            letters.extend_from_slice(u);
            letters.extend_from_slice(v);
            out.add_term(Word::from_letters(letters), Rational::one());
            return;
        }
        prefix.push(u[0]);
        go(prefix, &u[1..], v, out);
        prefix.pop();
        prefix.push(v[0]);
        go(prefix, u, &v[1..], out);
        prefix.pop();
    }

    let mut out = WordPolynomial::zero();
    let mut prefix = Vec::with_capacity(u.len() + v.len());
    go(&mut prefix, u.letters(), v.letters(), &mut out);
    out
}

/// Shuffle product by brute-force enumeration: every choice of positions
/// for the letters of `u` inside a word of length `|u| + |v|` contributes
/// one interleaving. Refuses to run when `C(|u|+|v|, |u|)` exceeds
/// [`ENUMERATION_LIMIT`].
pub fn shuffle_enumerate(u: &Word, v: &Word) -> Result<WordPolynomial, Error> {
    let total = u.len() + v.len();
    let count = binomial(total as u64, u.len() as u64);
    if count > num_bigint::BigInt::from(ENUMERATION_LIMIT) {
        return Err(Error::EnumerationTooLarge {
            interleavings: u128::try_from(count.magnitude().clone()).unwrap_or(u128::MAX),
            limit: ENUMERATION_LIMIT,
        });
    }

    fn go(
        chosen: &mut Vec<usize>,
        next_position: usize,
        remaining: usize,
        total: usize,
        u: &[Letter],
        v: &[Letter],
        out: &mut WordPolynomial,
    ) {
        if remaining == 0 {
            let mut letters = vec![Letter::Zero; total];
            let mut from_u = 0usize;
            let mut from_v = 0usize;
            for (position, slot) in letters.iter_mut().enumerate() {
                if from_u < chosen.len() && chosen[from_u] == position {
                    *slot = u[from_u];
                    from_u += 1;
                } else {
                    *slot = v[from_v];
                    from_v += 1;
                }
            }
            out.add_term(Word::from_letters(letters), Rational::one());
            return;
        }
        // Leave room for the letters of u that still need positions.
        for position in next_position..=(total - remaining) {
            chosen.push(position);
            go(chosen, position + 1, remaining - 1, total, u, v, out);
            chosen.pop();
        }
    }

    let mut out = WordPolynomial::zero();
    let mut chosen = Vec::with_capacity(u.len());
    go(
        &mut chosen,
        0,
        u.len(),
        total,
        u.letters(),
        v.letters(),
        &mut out,
    );
    Ok(out)
}

/// Bilinear extension of the shuffle product to polynomials.
pub fn shuffle_polynomials(p: &WordPolynomial, q: &WordPolynomial) -> WordPolynomial {
    let mut out = WordPolynomial::zero();
    for (u, cu) in p.terms() {
        for (v, cv) in q.terms() {
            let scale = cu * cv;
            out.add_scaled(&scale, &shuffle_recursive(u, v));
        }
    }
    out
}

/// Shuffle product of the codes of two compositions, read back as a
/// combination of compositions. Every interleaving of two codes again ends
/// in `1`, so the decoding never fails. Terms are sorted by the
/// lexicographic composition order.
pub fn shuffle_compositions(
    a: &Composition,
    b: &Composition,
) -> Vec<(Rational, Composition)> {
    let product = shuffle_recursive(&composition_to_word(a), &composition_to_word(b));
    let mut terms: Vec<(Rational, Composition)> = product
        .terms()
        .map(|(word, coefficient)| {
            let composition = word_to_composition(word)
                .expect("interleavings of composition codes end in 1");
            (coefficient.clone(), composition)
        })
        .collect();
    terms.sort_by(|(_, left), (_, right)| left.cmp(right));
    terms
}

/// Shuffle product of two composition codes, computed by the closed
/// recursion on their leading blocks instead of letter by letter:
///
/// ```text
/// A ⧢ B = sum_{i=1}^{a1} C(i+b1-2, b1-1) 0^(i+b1-2) 1 (A_i' ⧢ B_2)
///       + sum_{i=1}^{b1} C(i+a1-2, a1-1) 0^(i+a1-2) 1 (A_2 ⧢ B_i')
/// ```
///
/// where `A_i' = 0^(a1-i) 1 code(a2,...,ar)` demotes the leading exponent,
/// `A_2 = code(a2,...,ar)` drops it, and symmetrically for `B`. Both input
/// compositions must be nonempty.
pub fn shuffle_by_first_block(
    a: &Composition,
    b: &Composition,
) -> Result<WordPolynomial, Error> {
    let (Some(a1), Some(b1)) = (a.first(), b.first()) else {
        return Err(Error::EmptyComposition);
    };
    let a_rest = composition_to_word(&a.tail());
    let b_rest = composition_to_word(&b.tail());

    let mut out = WordPolynomial::zero();
    for i in 1..=a1 {
        let coefficient =
            Rational::from_integer(binomial((i + b1 - 2) as u64, (b1 - 1) as u64));
        let demoted = Word::block(a1 - i).concat(&a_rest);
        let inner = shuffle_recursive(&demoted, &b_rest);
        let prefix = Word::block(i + b1 - 2);
        out.add_scaled(&coefficient, &inner.prepended(&prefix));
    }
    for i in 1..=b1 {
        let coefficient =
            Rational::from_integer(binomial((i + a1 - 2) as u64, (a1 - 1) as u64));
        let demoted = Word::block(b1 - i).concat(&b_rest);
        let inner = shuffle_recursive(&a_rest, &demoted);
        let prefix = Word::block(i + a1 - 2);
        out.add_scaled(&coefficient, &inner.prepended(&prefix));
    }
    Ok(out)
}

/// Closed form for the shuffle of two single-block codes:
///
/// ```text
/// 0^(a-1) 1 ⧢ 0^(b-1) 1 = sum_{i=0}^{a-1} C(b-1+i, b-1) 0^(b-1+i) 1 0^(a-1-i) 1
///                       + sum_{i=0}^{b-1} C(a-1+i, a-1) 0^(a-1+i) 1 0^(b-1-i) 1
/// ```
///
/// Both exponents must be at least 1.
pub fn depth_one_shuffle(a: u32, b: u32) -> Result<WordPolynomial, Error> {
    if a < 1 || b < 1 {
        return Err(Error::ZeroPart);
    }
    let mut out = WordPolynomial::zero();
    for i in 0..a {
        let coefficient =
            Rational::from_integer(binomial((b - 1 + i) as u64, (b - 1) as u64));
        let word = Word::block(b - 1 + i).concat(&Word::block(a - 1 - i));
        out.add_term(word, coefficient);
    }
    for i in 0..b {
        let coefficient =
            Rational::from_integer(binomial((a - 1 + i) as u64, (a - 1) as u64));
        let word = Word::block(a - 1 + i).concat(&Word::block(b - 1 - i));
        out.add_term(word, coefficient);
    }
    Ok(out)
}

/// All `2^(weight-1)` compositions of a given weight, in a fixed
/// deterministic order (weight 0 yields just the empty composition).
pub fn compositions_of_weight(weight: u32) -> Vec<Composition> {
    if weight == 0 {
        return vec![Composition::empty()];
    }
    let gaps = weight - 1;
    let mut all = Vec::with_capacity(1usize << gaps);
    for mask in 0u64..(1u64 << gaps) {
        let mut parts = Vec::new();
        let mut current = 1u32;
        for gap in 0..gaps {
            if mask & (1 << gap) != 0 {
                parts.push(current);
                current = 1;
            } else {
                current += 1;
            }
        }
        parts.push(current);
        all.push(Composition(parts));
    }
    all
}

/// All nonempty compositions of weight `1..=max_weight`, optionally capped
/// in depth, ascending in weight and deterministic within each weight.
pub fn compositions_up_to_weight(
    max_weight: u32,
    max_depth: Option<usize>,
) -> Vec<Composition> {
    let mut all = Vec::new();
    for weight in 1..=max_weight {
        for composition in compositions_of_weight(weight) {
            if max_depth.is_none_or(|cap| composition.depth() <= cap) {
                all.push(composition);
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn word(text: &str) -> Word {
        text.parse().unwrap()
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(composition_to_word(&comp(&[1])), word("1"));
        assert_eq!(composition_to_word(&comp(&[3])), word("001"));
        assert_eq!(composition_to_word(&comp(&[2, 1])), word("011"));
        assert_eq!(composition_to_word(&comp(&[1, 2])), word("101"));
        assert_eq!(composition_to_word(&Composition::empty()), Word::empty());
    }

    #[test]
    fn encoding_roundtrips_and_preserves_weight() {
        for weight in 0..=7u32 {
            for composition in compositions_of_weight(weight) {
                let code = composition_to_word(&composition);
                assert_eq!(code.len() as u32, composition.weight());
                assert_eq!(word_to_composition(&code).unwrap(), composition);
            }
        }
    }

    #[test]
    fn decoding_rejects_words_not_ending_in_one() {
        assert!(word_to_composition(&word("0")).is_err());
        assert!(word_to_composition(&word("10")).is_err());
        assert!(word_to_composition(&word("0110")).is_err());
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut words = vec![
            word("1"),
            word("0101"),
            word("0"),
            Word::empty(),
            word("0011"),
            word("11"),
        ];
        words.sort();
        assert_eq!(
            words,
            vec![
                Word::empty(),
                word("0"),
                word("1"),
                word("11"),
                word("0011"),
                word("0101"),
            ]
        );
    }

    #[test]
    fn composition_parse_and_display() {
        assert_eq!("2,1".parse::<Composition>().unwrap(), comp(&[2, 1]));
        assert_eq!(" 4 , 1 , 1 ".parse::<Composition>().unwrap(), comp(&[4, 1, 1]));
        assert_eq!(comp(&[2, 1]).to_string(), "(2,1)");
        assert_eq!(Composition::empty().to_string(), "()");
        assert!("".parse::<Composition>().is_err());
        assert!("2,0".parse::<Composition>().is_err());
        assert!("2,x".parse::<Composition>().is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn shuffle_of_single_letters() {
        let product = shuffle_recursive(&word("1"), &word("1"));
        assert_eq!(product.coefficient(&word("11")), integer(2));
        assert_eq!(product.num_terms(), 1);
    }

    #[test]
    fn shuffle_of_two_depth_one_squares() {
        // 01 ⧢ 01 = 2*0101 + 4*0011, total mass C(4,2) = 6.
        let product = shuffle_recursive(&word("01"), &word("01"));
        assert_eq!(product.coefficient(&word("0101")), integer(2));
        assert_eq!(product.coefficient(&word("0011")), integer(4));
        assert_eq!(product.num_terms(), 2);
        assert_eq!(product.total_coefficient(), integer(6));
        assert_eq!(product.to_string(), "4*0011 + 2*0101");
    }

    #[test]
    fn unit_law_and_commutativity() {
        let w = word("01101");
        assert_eq!(
            shuffle_recursive(&Word::empty(), &w),
            WordPolynomial::from_word(w.clone())
        );
        assert_eq!(
            shuffle_recursive(&w, &Word::empty()),
            WordPolynomial::from_word(w.clone())
        );
        let u = word("011");
        assert_eq!(shuffle_recursive(&u, &w), shuffle_recursive(&w, &u));
    }

    #[test]
    fn enumeration_matches_recursion() {
        let words = ["", "0", "1", "01", "11", "001", "0101"];
        for u in &words {
            for v in &words {
                let u = word(u);
                let v = word(v);
                assert_eq!(
                    shuffle_enumerate(&u, &v).unwrap(),
                    shuffle_recursive(&u, &v),
                    "u={u} v={v}"
                );
            }
        }
    }

    #[test]
    fn enumeration_guard_trips_on_huge_products() {
        let u = Word::from_letters(vec![Letter::Zero; 22]);
        let v = Word::from_letters(vec![Letter::Zero; 22]);
        match shuffle_enumerate(&u, &v) {
            Err(Error::EnumerationTooLarge { interleavings, limit }) => {
                assert!(interleavings > limit);
            }
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn shuffle_compositions_matches_known_decomposition() {
        let terms = shuffle_compositions(&comp(&[2]), &comp(&[2]));
        assert_eq!(
            terms,
            vec![(integer(2), comp(&[2, 2])), (integer(4), comp(&[3, 1]))]
        );
        // Shuffling with the empty composition changes nothing.
        let terms = shuffle_compositions(&comp(&[2, 1]), &Composition::empty());
        assert_eq!(terms, vec![(integer(1), comp(&[2, 1]))]);
    }

    #[test]
    fn first_block_recursion_agrees_with_recursive_shuffle() {
        let cases = [
            (vec![1], vec![1]),
            (vec![2], vec![2]),
            (vec![1, 1], vec![1]),
            (vec![2, 1], vec![1, 1]),
            (vec![3], vec![2, 1]),
            (vec![2, 2], vec![2]),
        ];
        for (a, b) in cases {
            let a = comp(&a);
            let b = comp(&b);
            let direct =
                shuffle_recursive(&composition_to_word(&a), &composition_to_word(&b));
            assert_eq!(shuffle_by_first_block(&a, &b).unwrap(), direct, "a={a} b={b}");
        }
    }

    #[test]
    fn first_block_recursion_requires_nonempty_inputs() {
        assert_eq!(
            shuffle_by_first_block(&Composition::empty(), &comp(&[1])),
            Err(Error::EmptyComposition)
        );
    }

    #[test]
    fn depth_one_closed_form() {
        // (2) ⧢ (1): 1*101 + 2*011.
        let product = depth_one_shuffle(2, 1).unwrap();
        assert_eq!(product.coefficient(&word("101")), integer(1));
        assert_eq!(product.coefficient(&word("011")), integer(2));
        assert_eq!(product.num_terms(), 2);

        for a in 1..=5u32 {
            for b in 1..=5u32 {
                let direct = shuffle_recursive(
                    &composition_to_word(&comp(&[a])),
                    &composition_to_word(&comp(&[b])),
                );
                assert_eq!(depth_one_shuffle(a, b).unwrap(), direct, "a={a} b={b}");
            }
        }

        assert_eq!(depth_one_shuffle(0, 3), Err(Error::ZeroPart));
    }

    #[test]
    fn composition_enumeration_is_complete_and_deterministic() {
        assert_eq!(compositions_of_weight(0), vec![Composition::empty()]);
        assert_eq!(compositions_of_weight(1), vec![comp(&[1])]);
        assert_eq!(
            compositions_of_weight(3),
            vec![comp(&[3]), comp(&[1, 2]), comp(&[2, 1]), comp(&[1, 1, 1])]
        );
        for weight in 1..=10u32 {
            let all = compositions_of_weight(weight);
            assert_eq!(all.len(), 1 << (weight - 1));
            assert!(all.iter().all(|c| c.weight() == weight));
        }
        let capped = compositions_up_to_weight(4, Some(2));
        assert!(capped.iter().all(|c| c.depth() <= 2 && c.weight() <= 4));
        assert_eq!(capped.len(), 1 + 2 + 3 + 4);
    }

    #[test]
    fn polynomial_terms_cancel_to_zero() {
        let mut poly = WordPolynomial::zero();
        poly.add_term(word("01"), integer(3));
        poly.add_term(word("01"), integer(-3));
        assert!(poly.is_zero());
        assert_eq!(poly.to_string(), "0");
        assert_eq!(poly.coefficient(&word("01")), integer(0));
    }
}
