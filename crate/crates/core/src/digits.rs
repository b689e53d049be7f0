//! Base-p digit arithmetic on arbitrary-precision naturals.
//!
//! Digit strings are stored little-endian: index `i` carries weight `p^i`.
//! Text forms are most-significant digit first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Arbitrary-precision nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn from_biguint(n: BigUint) -> Self {
        Natural(n)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Renders the value in `radix` (2..=36), lowercase letters for digits above 9.
    pub fn to_str_radix(&self, radix: u32) -> String {
        self.0.to_str_radix(radix)
    }
}

impl From<u64> for Natural {
    fn from(n: u64) -> Self {
        Natural(BigUint::from(n))
    }
}

impl From<BigUint> for Natural {
    fn from(n: BigUint) -> Self {
        Natural(n)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Natural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_natural(s, 10)
    }
}

/// Parses `text` as a natural number in `radix`, accepting `0-9` then `a-z`
/// (case-insensitive).
pub fn parse_natural(text: &str, radix: u32) -> Result<Natural> {
    if !(2..=36).contains(&radix) {
        return Err(Error::InvalidRadix(radix));
    }
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut digits = Vec::with_capacity(text.len());
    for ch in text.chars() {
        match ch.to_digit(radix) {
            Some(d) => digits.push(d as u8),
            None => return Err(Error::InvalidDigit { ch, radix }),
        }
    }
    let n = BigUint::from_radix_be(&digits, radix).ok_or(Error::EmptyInput)?;
    Ok(Natural(n))
}

/// A little-endian base-p digit sequence.
///
/// Canonical strings have no most-significant zeros (except the single digit
/// of zero). Padded strings, such as pseudo-digits and blocks, keep their
/// leading zeros and say so through [`DigitString::is_padded`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u64>,
    base: Prime,
    padded: bool,
}

impl DigitString {
    /// Builds a canonical string, trimming most-significant zeros.
    pub fn new(mut digits: Vec<u64>, base: Prime) -> Result<Self> {
        check_digits(&digits, base)?;
        trim(&mut digits);
        Ok(DigitString { digits, base, padded: false })
    }

    /// Builds a string whose leading zeros are significant. An empty digit
    /// vector is allowed and represents the empty block.
    pub fn padded(digits: Vec<u64>, base: Prime) -> Result<Self> {
        check_digits(&digits, base)?;
        Ok(DigitString { digits, base, padded: true })
    }

    pub(crate) fn padded_unchecked(digits: Vec<u64>, base: Prime) -> Self {
        debug_assert!(digits.iter().all(|&d| d < base.get()));
        DigitString { digits, base, padded: true }
    }

    /// Parses big-endian text in base `p` (which must be at most 36),
    /// preserving leading zeros.
    pub fn parse_padded(text: &str, base: Prime) -> Result<Self> {
        let radix = text_radix(base).ok_or(Error::InvalidRadix(base.get().min(u32::MAX as u64) as u32))?;
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let digits = text
            .chars()
            .rev()
            .map(|ch| ch.to_digit(radix).map(u64::from).ok_or(Error::InvalidDigit { ch, radix }))
            .collect::<Result<Vec<_>>>()?;
        Ok(DigitString { digits, base, padded: true })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_padded(&self) -> bool {
        self.padded
    }

    /// Digit at weight `p^i`; zero past the end.
    #[inline]
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> Natural {
        from_base_p(self)
    }

    /// The value as a machine word, if it fits.
    pub fn value_u64(&self) -> Option<u64> {
        let p = self.base.get();
        let mut acc: u64 = 0;
        for &d in self.digits.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(d)?;
        }
        Some(acc)
    }

    /// The sub-string of digits `start..start + len`, zero-extended past the
    /// end and marked padded.
    pub fn window(&self, start: usize, len: usize) -> DigitString {
        let digits = (start..start + len).map(|i| self.digit(i)).collect();
        DigitString { digits, base: self.base, padded: true }
    }

    /// Compares values, ignoring any difference in padding.
    pub fn cmp_value(&self, other: &DigitString) -> Ordering {
        let n = self.len().max(other.len());
        for i in (0..n).rev() {
            match self.digit(i).cmp(&other.digit(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Big-endian text including any padding zeros.
    pub fn to_text(&self) -> String {
        render_digits(self.digits.iter().rev().copied(), self.base)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_digits(digits: &[u64], base: Prime) -> Result<()> {
    match digits.iter().find(|&&d| d >= base.get()) {
        Some(&digit) => Err(Error::DigitOutOfRange { digit, base: base.get() }),
        None => Ok(()),
    }
}

fn trim(digits: &mut Vec<u64>) {
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    if digits.is_empty() {
        digits.push(0);
    }
}

fn text_radix(base: Prime) -> Option<u32> {
    (base.get() <= 36).then_some(base.get() as u32)
}

/// Renders big-endian digits. Bases up to 36 use `0-9a-z` with no
/// separators; larger bases fall back to `<d:d:...>` with decimal digits.
pub(crate) fn render_digits(big_endian: impl Iterator<Item = u64>, base: Prime) -> String {
    match text_radix(base) {
        Some(radix) => big_endian
            .map(|d| char::from_digit(d as u32, radix).expect("digit below radix"))
            .collect(),
        None => {
            let parts: Vec<String> = big_endian.map(|d| d.to_string()).collect();
            format!("<{}>", parts.join(":"))
        }
    }
}

/// Canonical base-p expansion of `n`.
///
/// Divides by the largest power `p^k` that fits in a word, then splits each
/// word-sized remainder into `k` digits.
pub fn to_base_p(n: &Natural, p: Prime) -> DigitString {
    let digits = digits_of(n.as_biguint(), p);
    DigitString { digits, base: p, padded: false }
}

pub(crate) fn digits_of(n: &BigUint, p: Prime) -> Vec<u64> {
    if let Some(mut x) = n.to_u64() {
        let pv = p.get();
        let mut out = Vec::new();
        while x > 0 {
            out.push(x % pv);
            x /= pv;
        }
        if out.is_empty() {
            out.push(0);
        }
        return out;
    }
    let (k, pk) = p.max_chunk();
    let pv = p.get();
    let mut rest = n.clone();
    let mut out = Vec::with_capacity((n.bits() as usize) / 2 + 1);
    while !rest.is_zero() {
        let (q, r) = num_integer::Integer::div_rem(&rest, &BigUint::from(pk));
        let mut r = r.to_u64().expect("remainder below p^k");
        for _ in 0..k {
            out.push(r % pv);
            r /= pv;
        }
        rest = q;
    }
    trim(&mut out);
    out
}

/// Positional value of a digit string.
pub fn from_base_p(s: &DigitString) -> Natural {
    if let Some(v) = s.value_u64() {
        return Natural::from(v);
    }
    let (k, pk) = s.base.max_chunk();
    let pv = s.base.get();
    let mut acc = BigUint::zero();
    // rchunks walks from the most significant end; only the last chunk can be short.
    for chunk in s.digits.rchunks(k as usize) {
        let mut word = 0u64;
        for &d in chunk.iter().rev() {
            word = word * pv + d;
        }
        let scale = if chunk.len() == k as usize {
            pk
        } else {
            pv.pow(chunk.len() as u32)
        };
        acc = acc * BigUint::from(scale) + BigUint::from(word);
    }
    Natural(acc)
}

/// Validating form of [`from_base_p`] for raw little-endian digits.
pub fn from_digits(digits: &[u64], p: Prime) -> Result<Natural> {
    check_digits(digits, p)?;
    Ok(from_base_p(&DigitString::padded_unchecked(digits.to_vec(), p)))
}

/// Schoolbook base-p subtraction `a - b`, returning the canonical difference
/// and the number of positions that borrowed.
pub fn subtract_with_borrows(a: &DigitString, b: &DigitString) -> Result<(DigitString, usize)> {
    if a.base != b.base {
        return Err(Error::MixedBase(a.base.get(), b.base.get()));
    }
    let p = a.base.get();
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    let mut borrow = 0u64;
    let mut borrows = 0;
    for i in 0..n {
        let (x, y) = (a.digit(i), b.digit(i) + borrow);
        if x >= y {
            out.push(x - y);
            borrow = 0;
        } else {
            out.push(x + (p - y));
            borrow = 1;
            borrows += 1;
        }
    }
    if borrow != 0 {
        return Err(Error::NegativeResult);
    }
    trim(&mut out);
    Ok((DigitString { digits: out, base: a.base, padded: false }, borrows))
}

/// Schoolbook base-p addition, returning the canonical sum and the number of
/// positions that produced a carry.
pub fn add_with_carries(a: &DigitString, b: &DigitString) -> Result<(DigitString, usize)> {
    if a.base != b.base {
        return Err(Error::MixedBase(a.base.get(), b.base.get()));
    }
    let p = a.base.get();
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n + 1);
    let mut carry = 0u64;
    let mut carries = 0;
    for i in 0..n {
        // x + y + carry may exceed u64 when p is near 2^64.
        let s = a.digit(i) as u128 + b.digit(i) as u128 + carry as u128;
        if s >= p as u128 {
            out.push((s - p as u128) as u64);
            carry = 1;
            carries += 1;
        } else {
            out.push(s as u64);
            carry = 0;
        }
    }
    if carry != 0 {
        out.push(1);
    }
    trim(&mut out);
    Ok((DigitString { digits: out, base: a.base, padded: false }, carries))
}

/// Concatenates blocks, `blocks[0]` least significant. Every block keeps its
/// full length so internal leading zeros survive.
pub fn concat_value(blocks: &[DigitString]) -> Result<DigitString> {
    let Some(first) = blocks.first() else {
        return Err(Error::EmptyBlock);
    };
    let base = first.base;
    let mut digits = Vec::with_capacity(blocks.iter().map(DigitString::len).sum());
    for block in blocks {
        if block.base != base {
            return Err(Error::MixedBase(base.get(), block.base.get()));
        }
        digits.extend_from_slice(&block.digits);
    }
    Ok(DigitString { digits, base, padded: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ds(text: &str, base: u64) -> DigitString {
        DigitString::parse_padded(text, p(base)).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_natural("1221121202", 3).unwrap(), Natural::from(38360));
        assert_eq!(parse_natural("0", 2).unwrap(), Natural::zero());
        let a = parse_natural("432321433012", 5).unwrap();
        assert_eq!(a.to_str_radix(5), "432321433012");
        assert_eq!(parse_natural("zZ", 36).unwrap(), Natural::from(36 * 35 + 35));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_natural("", 10), Err(Error::EmptyInput));
        assert_eq!(parse_natural("123", 3), Err(Error::InvalidDigit { ch: '3', radix: 3 }));
        assert_eq!(parse_natural("1-2", 10), Err(Error::InvalidDigit { ch: '-', radix: 10 }));
        assert_eq!(parse_natural("1", 37), Err(Error::InvalidRadix(37)));
    }

    #[test]
    fn to_base_examples() {
        assert_eq!(to_base_p(&Natural::from(7), p(3)).digits(), &[1, 2]);
        assert_eq!(to_base_p(&Natural::zero(), p(5)).digits(), &[0]);
        assert_eq!(to_base_p(&Natural::from(38360), p(3)).to_text(), "1221121202");
    }

    #[test]
    fn from_base_examples() {
        assert_eq!(from_digits(&[1, 2], p(3)).unwrap(), Natural::from(7));
        assert_eq!(from_digits(&[0], p(7)).unwrap(), Natural::zero());
        assert_eq!(ds("12021", 3).value(), Natural::from(142));
        assert_eq!(
            from_digits(&[3], p(3)),
            Err(Error::DigitOutOfRange { digit: 3, base: 3 })
        );
    }

    #[test]
    fn canonical_trims_and_padded_keeps() {
        let c = DigitString::new(vec![1, 0, 0], p(3)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c.is_padded());
        let z = DigitString::new(vec![], p(3)).unwrap();
        assert_eq!(z.digits(), &[0]);
        let q = ds("03", 5);
        assert_eq!(q.to_text(), "03");
        assert!(q.is_padded());
        assert_eq!(q.value(), Natural::from(3));
    }

    #[test]
    fn big_prime_rendering() {
        let big = p(101);
        let s = to_base_p(&Natural::from(101 * 101 + 5), big);
        assert_eq!(s.to_text(), "<1:0:5>");
    }

    #[test]
    fn subtraction_examples() {
        let (d, k) = subtract_with_borrows(&ds("1010", 2), &ds("0101", 2)).unwrap();
        assert_eq!((d.to_text().as_str(), k), ("101", 2));
        let x = ds("2101", 3);
        let (d, k) = subtract_with_borrows(&x, &x).unwrap();
        assert_eq!((d.to_text().as_str(), k), ("0", 0));
        let (d, k) = subtract_with_borrows(&ds("1221121202", 3), &ds("1011012021", 3)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(d.value(), Natural::from(38360 - 22741));
    }

    #[test]
    fn subtraction_errors() {
        assert_eq!(subtract_with_borrows(&ds("1", 2), &ds("10", 2)), Err(Error::NegativeResult));
        assert_eq!(subtract_with_borrows(&ds("1", 2), &ds("1", 3)), Err(Error::MixedBase(2, 3)));
    }

    #[test]
    fn concat_examples() {
        let c = concat_value(&[ds("2", 3), ds("20", 3)]).unwrap();
        assert_eq!(c.to_text(), "202");
        let x = ds("0121", 3);
        assert_eq!(concat_value(std::slice::from_ref(&x)).unwrap(), x);
        let c = concat_value(&[ds("12", 5), ds("0", 5), ds("433", 5)]).unwrap();
        assert_eq!(c.to_text(), "433012");
        assert_eq!(c.len(), 6);
        assert_eq!(concat_value(&[ds("1", 2), ds("1", 3)]), Err(Error::MixedBase(2, 3)));
        assert_eq!(concat_value(&[]), Err(Error::EmptyBlock));
    }

    #[test]
    fn large_round_trip_prime_near_word() {
        let q = p(18_446_744_073_709_551_557);
        let n = Natural::from(BigUint::from(3u32).pow(500));
        let s = to_base_p(&n, q);
        assert_eq!(from_base_p(&s), n);
        let (sum, _) = add_with_carries(&s, &s).unwrap();
        assert_eq!(from_base_p(&sum), Natural::from(BigUint::from(2u32) * n.as_biguint()));
    }

    fn prime_strategy() -> impl Strategy<Value = Prime> {
        prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_map(|v| Prime::new(v).unwrap())
    }

    fn big_natural(max_bytes: usize) -> impl Strategy<Value = Natural> {
        prop::collection::vec(any::<u8>(), 0..max_bytes)
            .prop_map(|bytes| Natural::from(BigUint::from_bytes_le(&bytes)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip(n in big_natural(4200), q in prime_strategy()) {
            // 4200 bytes is over 10^4 decimal digits.
            let s = to_base_p(&n, q);
            prop_assert!(s.digits().last() != Some(&0) || s.len() == 1);
            prop_assert_eq!(from_base_p(&s), n);
        }

        #[test]
        fn borrows_equal_carries(x in big_natural(40), y in big_natural(40), q in prime_strategy()) {
            let (a, b) = if x >= y { (x, y) } else { (y, x) };
            let (sa, sb) = (to_base_p(&a, q), to_base_p(&b, q));
            let (diff, borrows) = subtract_with_borrows(&sa, &sb).unwrap();
            let (sum, carries) = add_with_carries(&diff, &sb).unwrap();
            prop_assert_eq!(borrows, carries);
            prop_assert_eq!(sum.value(), a);
        }
    }
}
