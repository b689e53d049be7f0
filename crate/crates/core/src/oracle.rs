//! Brute-force ground truth that never touches pseudo-digits: exact
//! binomials, Pascal's triangle modulo `m`, and the borrow count of `A - B`.
//!
//! These stay deliberately naive. Everything here is guarded by size limits
//! instead of being allowed to run unbounded.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::digits::{subtract_with_borrows, to_base_p, Natural};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Default cap on the size of an exact binomial, in decimal digits.
pub const DEFAULT_MAX_DIGITS: u64 = 1_000_000;

/// Largest row index accepted by [`binom_mod_pascal`].
pub const PASCAL_MAX_ROW: u64 = 10_000;

/// Exact `C(A, B)` under the default size cap.
pub fn binom_exact(a: &Natural, b: &Natural) -> Result<Natural> {
    binom_exact_capped(a, b, DEFAULT_MAX_DIGITS)
}

/// Exact `C(A, B)` by the exact-division recurrence
/// `C(a - k + i, i) = C(a - k + i - 1, i - 1) * (a - k + i) / i`, refusing
/// inputs whose result could exceed `max_digits` decimal digits.
pub fn binom_exact_capped(a: &Natural, b: &Natural, max_digits: u64) -> Result<Natural> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    let (a, b) = (a.as_biguint(), b.as_biguint());
    let diff = a - b;
    let k = b.min(&diff).to_u64().ok_or(Error::TooLarge)?;
    // C(a, k) < a^k, and log2(10) > 3.
    let bound_bits = (k as u128) * (a.bits() as u128);
    if bound_bits > (max_digits as u128) * 10 / 3 + 64 {
        return Err(Error::TooLarge);
    }
    let base = a - BigUint::from(k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= &base + BigUint::from(i);
        let (q, r) = acc.div_rem(&BigUint::from(i));
        debug_assert!(r.is_zero());
        acc = q;
    }
    Ok(Natural::from(acc))
}

/// `C(A, B) mod modulus` by running Pascal's recurrence row by row.
pub fn binom_mod_pascal(a: u64, b: u64, modulus: u64) -> Result<u64> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    if a > PASCAL_MAX_ROW {
        return Err(Error::TooLarge);
    }
    if modulus == 0 {
        return Err(Error::DivisionByZero);
    }
    let b = b as usize;
    let mut row = vec![0u64; b + 1];
    row[0] = 1 % modulus;
    for n in 1..=a as usize {
        for k in (1..=b.min(n)).rev() {
            row[k] = add_mod(row[k], row[k - 1], modulus);
        }
    }
    Ok(row[b])
}

#[inline]
fn add_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 + y as u128) % m as u128) as u64
}

/// Rows `0..=max` of Pascal's triangle modulo `modulus`, one at a time.
pub fn pascal_rows_mod(max: u64, modulus: u64) -> Result<impl Iterator<Item = Vec<u64>>> {
    if max > PASCAL_MAX_ROW {
        return Err(Error::TooLarge);
    }
    if modulus == 0 {
        return Err(Error::DivisionByZero);
    }
    let mut row: Vec<u64> = Vec::new();
    Ok((0..=max).map(move |_| {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1 % modulus);
        for w in row.windows(2) {
            next.push(add_mod(w[0], w[1], modulus));
        }
        if !row.is_empty() {
            next.push(1 % modulus);
        }
        row = next.clone();
        next
    }))
}

/// Exact rows `0..=max` of Pascal's triangle.
pub fn pascal_rows_exact(max: u64) -> Result<impl Iterator<Item = Vec<BigUint>>> {
    if max > PASCAL_MAX_ROW {
        return Err(Error::TooLarge);
    }
    let mut row: Vec<BigUint> = Vec::new();
    Ok((0..=max).map(move |_| {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        if !row.is_empty() {
            next.push(BigUint::one());
        }
        row = next.clone();
        next
    }))
}

/// Exponent of `p` in a nonzero integer.
pub fn p_adic_valuation(x: &BigUint, p: Prime) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    if p.get() == 2 {
        return x.trailing_zeros();
    }
    let pb = BigUint::from(p.get());
    let mut v = 0;
    let mut t = x.clone();
    loop {
        let (q, r) = t.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        t = q;
        v += 1;
    }
}

/// Number of borrows in the base-p subtraction `A - B`.
pub fn kummer_valuation(a: &Natural, b: &Natural, p: Prime) -> Result<usize> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    let (_, borrows) = subtract_with_borrows(&to_base_p(a, p), &to_base_p(b, p))?;
    Ok(borrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::parse_natural;

    fn n(x: u64) -> Natural {
        Natural::from(x)
    }

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(binom_exact(&n(10), &n(5)).unwrap(), n(252));
        assert_eq!(binom_exact(&n(77), &n(0)).unwrap(), n(1));
        assert_eq!(binom_exact(&n(5), &n(6)), Err(Error::OrderViolation));
        let a = parse_natural("1221121202", 3).unwrap();
        let b = parse_natural("1011012021", 3).unwrap();
        let c = binom_exact(&a, &b).unwrap();
        assert_eq!((c.as_biguint() % 243u32).to_u64(), Some(18));
    }

    #[test]
    fn exact_size_guard() {
        let big = Natural::from(BigUint::one() << 2000usize);
        let half = Natural::from(BigUint::one() << 1999usize);
        assert_eq!(binom_exact(&big, &half), Err(Error::TooLarge));
        assert_eq!(binom_exact_capped(&n(1000), &n(500), 10), Err(Error::TooLarge));
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(binom_mod_pascal(10, 5, 16).unwrap(), 12);
        assert_eq!(binom_mod_pascal(37, 37, 5).unwrap(), 1);
        assert_eq!(binom_mod_pascal(7, 5, 9).unwrap(), 3);
        assert_eq!(binom_mod_pascal(10_001, 5, 9), Err(Error::TooLarge));
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_valuation(&n(10), &n(5), p(2)).unwrap(), 2);
        assert_eq!(kummer_valuation(&n(999), &n(999), p(7)).unwrap(), 0);
        let a = parse_natural("1221121202", 3).unwrap();
        let b = parse_natural("1011012021", 3).unwrap();
        assert_eq!(kummer_valuation(&a, &b, p(3)).unwrap(), 2);
    }

    #[test]
    fn oracles_agree() {
        for m in [8u64, 27, 243, 3125] {
            for (a, row) in pascal_rows_mod(300, m).unwrap().enumerate() {
                for (b, &r) in row.iter().enumerate() {
                    let exact = binom_exact(&n(a as u64), &n(b as u64)).unwrap();
                    assert_eq!((exact.as_biguint() % m).to_u64(), Some(r), "C({a},{b}) mod {m}");
                }
            }
        }
        for a in (0..300u64).step_by(37) {
            for b in 0..=a {
                assert_eq!(
                    binom_mod_pascal(a, b, 243).unwrap(),
                    pascal_rows_mod(a, 243).unwrap().last().unwrap()[b as usize]
                );
            }
        }
    }

    #[test]
    fn kummer_matches_factorization() {
        for q in [2u64, 3, 5] {
            let q = p(q);
            for (a, row) in pascal_rows_exact(600).unwrap().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    let v = kummer_valuation(&n(a as u64), &n(b as u64), q).unwrap() as u64;
                    assert_eq!(p_adic_valuation(c, q), Some(v), "C({a},{b}) at p={q}");
                }
            }
        }
    }

    #[test]
    fn absorption_identities() {
        let rows: Vec<Vec<BigUint>> = pascal_rows_exact(500).unwrap().collect();
        for a in 1..=500usize {
            for b in 1..=a {
                let lhs = BigUint::from(b) * &rows[a][b];
                assert_eq!(lhs, BigUint::from(a) * &rows[a - 1][b - 1]);
                if b < a {
                    let lhs = BigUint::from(a - b) * &rows[a][b];
                    assert_eq!(lhs, BigUint::from(a) * &rows[a - 1][b]);
                }
            }
        }
    }
}
