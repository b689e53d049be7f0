//! Pseudo-digit decomposition of a pair `(A, B)`.
//!
//! Starting from the least significant digit, digits are grouped until the
//! group of `A` is at least the group of `B`. Every proper low prefix of a
//! group compares strictly below, so a group of `c` digits contributes
//! exactly `c - 1` borrows to `A - B`.

use std::cmp::Ordering;
use std::fmt;

use crate::digits::{concat_value, render_digits, to_base_p, DigitString, Natural};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// One pair of pseudo-digits, both padded to the same length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoPair {
    a: DigitString,
    b: DigitString,
}

impl PseudoPair {
    fn new(a: DigitString, b: DigitString) -> Self {
        debug_assert_eq!(a.len(), b.len());
        PseudoPair { a, b }
    }

    fn zero(base: Prime) -> Self {
        PseudoPair::new(
            DigitString::padded_unchecked(vec![0], base),
            DigitString::padded_unchecked(vec![0], base),
        )
    }

    pub fn a(&self) -> &DigitString {
        &self.a
    }

    pub fn b(&self) -> &DigitString {
        &self.b
    }

    /// Number of base-p digits in the pair.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `v_p C(a, b)`, which is always one less than the length.
    pub fn valuation(&self) -> u64 {
        self.len() as u64 - 1
    }
}

/// The full pseudo-digit expansion of `(A, B)`; `pairs[0]` is least significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoExpansion {
    pairs: Vec<PseudoPair>,
    base: Prime,
    a: Natural,
    b: Natural,
}

impl PseudoExpansion {
    pub fn pairs(&self) -> &[PseudoPair] {
        &self.pairs
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn a(&self) -> &Natural {
        &self.a
    }

    pub fn b(&self) -> &Natural {
        &self.b
    }

    /// Index of the most significant pair.
    pub fn d(&self) -> usize {
        self.pairs.len() - 1
    }

    /// Total number of base-p digits across all pairs.
    pub fn digit_count(&self) -> usize {
        self.pairs.iter().map(PseudoPair::len).sum()
    }

    /// Pair `i`, or the zero pseudo-digit above the top.
    pub fn pair_or_zero(&self, i: usize) -> PseudoPair {
        self.pairs.get(i).cloned().unwrap_or_else(|| PseudoPair::zero(self.base))
    }

    /// Parenthesized big-endian groups of the `A` side, e.g. `(4)(323)(2)`.
    pub fn render_a(&self) -> String {
        render_groups(self.pairs.iter().map(|pr| &pr.a), self.base)
    }

    /// Parenthesized big-endian groups of the `B` side.
    pub fn render_b(&self) -> String {
        render_groups(self.pairs.iter().map(|pr| &pr.b), self.base)
    }
}

impl fmt::Display for PseudoExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.render_a(), self.render_b())
    }
}

fn render_groups<'a>(groups: impl DoubleEndedIterator<Item = &'a DigitString>, base: Prime) -> String {
    groups
        .rev()
        .map(|g| format!("({})", render_digits(g.digits().iter().rev().copied(), base)))
        .collect()
}

/// Splits `(A, B)` into pseudo-digit pairs.
pub fn decompose(a: &Natural, b: &Natural, p: Prime) -> Result<PseudoExpansion> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    let da = to_base_p(a, p);
    let db = to_base_p(b, p);
    let pairs = group_digits(da.digits(), |i| db.digit(i), p);
    Ok(PseudoExpansion { pairs, base: p, a: a.clone(), b: b.clone() })
}

/// Groups digit positions of `a` against `b` (zero past its end).
fn group_digits(a: &[u64], b: impl Fn(usize) -> u64, p: Prime) -> Vec<PseudoPair> {
    let mut pairs = Vec::new();
    let mut start = 0;
    let mut ord = Ordering::Equal;
    for (i, &alpha) in a.iter().enumerate() {
        let beta = b(i);
        // The newly appended digit is the most significant one in the group.
        if alpha != beta {
            ord = alpha.cmp(&beta);
        }
        if ord != Ordering::Less {
            let ga = a[start..=i].to_vec();
            let gb = (start..=i).map(&b).collect();
            pairs.push(PseudoPair::new(
                DigitString::padded_unchecked(ga, p),
                DigitString::padded_unchecked(gb, p),
            ));
            start = i + 1;
            ord = Ordering::Equal;
        }
    }
    // A >= B means the top group always closes within A's digits.
    assert_eq!(start, a.len(), "pseudo-digit group ran past the top digit of A");
    pairs
}

/// `v_p C(A, B)` as (digit count) - (pair count).
pub fn pseudo_valuation(e: &PseudoExpansion) -> u64 {
    (e.digit_count() - e.pairs.len()) as u64
}

/// The pair of blocks formed by pseudo-digits `i..i + len`, lowest first.
/// Indices past the top pair read as the zero pseudo-digit.
pub fn block(e: &PseudoExpansion, i: usize, len: usize) -> Result<(DigitString, DigitString)> {
    if len == 0 {
        return Err(Error::EmptyBlock);
    }
    let pairs: Vec<PseudoPair> = (i..i + len).map(|k| e.pair_or_zero(k)).collect();
    let a: Vec<DigitString> = pairs.iter().map(|pr| pr.a.clone()).collect();
    let b: Vec<DigitString> = pairs.iter().map(|pr| pr.b.clone()).collect();
    Ok((concat_value(&a)?, concat_value(&b)?))
}

/// `v_p` of the block binomial over pseudo-digits `i..i + len`.
pub fn block_valuation(e: &PseudoExpansion, i: usize, len: usize) -> u64 {
    (i..i + len)
        .map(|k| e.pairs.get(k).map_or(0, PseudoPair::valuation))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::{parse_natural, subtract_with_borrows};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn expand(a: &str, b: &str, base: u64) -> PseudoExpansion {
        let r = base as u32;
        decompose(&parse_natural(a, r).unwrap(), &parse_natural(b, r).unwrap(), p(base)).unwrap()
    }

    #[test]
    fn base5_example() {
        let e = expand("432321433012", "323411244003", 5);
        assert_eq!(e.render_a(), "(4)(323)(2)(1)(433)(0)(12)");
        assert_eq!(e.render_b(), "(3)(234)(1)(1)(244)(0)(03)");
        assert_eq!(pseudo_valuation(&e), 12 - 7);
    }

    #[test]
    fn base3_example() {
        let e = expand("1221121202", "1011012021", 3);
        assert_eq!(e.render_a(), "(1)(2)(2)(1)(1)(21)(20)(2)");
        assert_eq!(e.render_b(), "(1)(0)(1)(1)(0)(12)(02)(1)");
        assert_eq!(e.d(), 7);
        assert_eq!(pseudo_valuation(&e), 2);
    }

    #[test]
    fn equal_arguments_are_singletons() {
        let e = expand("432321433012", "432321433012", 5);
        assert!(e.pairs().iter().all(|pr| pr.len() == 1));
        assert_eq!(pseudo_valuation(&e), 0);
    }

    #[test]
    fn segmentation_depends_on_both_arguments() {
        let with_b = expand("432321433012", "323411244003", 5);
        let with_zero = expand("432321433012", "0", 5);
        assert_eq!(with_zero.render_a(), "(4)(3)(2)(3)(2)(1)(4)(3)(3)(0)(1)(2)");
        assert_eq!(with_zero.render_b(), "(0)(0)(0)(0)(0)(0)(0)(0)(0)(0)(0)(0)");
        assert_ne!(with_b.render_a(), with_zero.render_a());
    }

    #[test]
    fn zero_pair() {
        let e = decompose(&Natural::zero(), &Natural::zero(), p(7)).unwrap();
        assert_eq!(e.d(), 0);
        assert_eq!(e.render_a(), "(0)");
        assert_eq!(pseudo_valuation(&e), 0);
    }

    #[test]
    fn order_violation() {
        assert_eq!(
            decompose(&Natural::from(3), &Natural::from(4), p(2)),
            Err(Error::OrderViolation)
        );
    }

    #[test]
    fn binary_example_valuation() {
        let e = expand("1010", "0101", 2);
        assert_eq!(e.render_a(), "(10)(10)");
        assert_eq!(e.render_b(), "(01)(01)");
        assert_eq!(pseudo_valuation(&e), 2);
    }

    #[test]
    fn blocks() {
        let e = expand("1221121202", "1011012021", 3);
        let (a, b) = block(&e, 0, 3).unwrap();
        assert_eq!((a.to_text().as_str(), b.to_text().as_str()), ("21202", "12021"));
        assert_eq!(block_valuation(&e, 0, 3), 2);
        let (a, b) = block(&e, 4, 1).unwrap();
        assert_eq!((&a, &b), (e.pairs()[4].a(), e.pairs()[4].b()));
        assert_eq!(block_valuation(&e, 4, 1), 0);
        assert_eq!(block(&e, 0, 0), Err(Error::EmptyBlock));

        let e2 = expand("1010", "0101", 2);
        let (a, b) = block(&e2, 0, 2).unwrap();
        assert_eq!((a.to_text().as_str(), b.to_text().as_str()), ("1010", "0101"));
    }

    #[test]
    fn blocks_past_the_top_are_zero_padded() {
        let e = expand("1010", "0101", 2);
        let (a, b) = block(&e, 1, 3).unwrap();
        assert_eq!((a.to_text().as_str(), b.to_text().as_str()), ("0010", "0001"));
        assert_eq!(block_valuation(&e, 1, 3), 1);
    }

    #[test]
    fn block_valuation_matches_borrows() {
        let e = expand("432321433012", "323411244003", 5);
        for i in 0..=e.d() {
            for len in 1..=(e.d() + 2 - i) {
                let (a, b) = block(&e, i, len).unwrap();
                let (_, borrows) = subtract_with_borrows(&a, &b).unwrap();
                assert_eq!(block_valuation(&e, i, len), borrows as u64);
            }
        }
    }
}
