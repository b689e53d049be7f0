//! Small exact binomials reduced to a valuation and a unit modulo `p^e`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::valued::{modulus_for, ValuedUnit};
use crate::digits::{DigitString, Natural};
use crate::error::{Error, Result};
use crate::modular::{inv_mod, mul_mod};
use crate::prime::Prime;

/// `C(a, b)` as `p^v * u` with `u` modulo `p^e`, by the multiplicative
/// formula `prod_{i=1..k} (a - k + i) / i` with `k = min(b, a - b)`.
///
/// Each term has its p-power stripped before the unit is accumulated, so the
/// cost is `O(k)` word operations when `a` fits in a word.
pub fn exact_binom_mod(a: &Natural, b: &Natural, p: Prime, e: u32) -> Result<ValuedUnit> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    let modulus = modulus_for(p, e)?;
    if let (Some(a), Some(b)) = (a.to_u64(), b.to_u64()) {
        let (v, u) = binom_u64(a, b, p, modulus);
        return Ok(ValuedUnit::from_parts_unchecked(p, e, modulus, v, u));
    }
    let (v, u) = binom_big(a.as_biguint(), b.as_biguint(), p, modulus)?;
    Ok(ValuedUnit::from_parts_unchecked(p, e, modulus, v, u))
}

pub(crate) fn binom_u64(a: u64, b: u64, p: Prime, modulus: u64) -> (u64, u64) {
    let k = b.min(a - b);
    let base = a - k;
    let (mut num, mut den) = (1u64, 1u64);
    let (mut vn, mut vd) = (0u64, 0u64);
    for i in 1..=k {
        let (v, u) = p.split(base + i);
        vn += v;
        num = mul_mod(num, u % modulus, modulus);
        let (v, u) = p.split(i);
        vd += v;
        den = mul_mod(den, u % modulus, modulus);
    }
    let inv = inv_mod(den, modulus).expect("unit denominator");
    (vn - vd, mul_mod(num, inv, modulus))
}

fn binom_big(a: &BigUint, b: &BigUint, p: Prime, modulus: u64) -> Result<(u64, u64)> {
    let diff = a - b;
    let k = b.min(&diff).to_u64().ok_or(Error::TooLarge)?;
    let base = a - BigUint::from(k);
    let pb = BigUint::from(p.get());
    let mb = BigUint::from(modulus);
    let (mut num, mut den) = (1u64, 1u64);
    let (mut vn, mut vd) = (0u64, 0u64);
    for i in 1..=k {
        let mut t = &base + BigUint::from(i);
        loop {
            let (q, r) = t.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            t = q;
            vn += 1;
        }
        let u = (t % &mb).to_u64().expect("below modulus");
        num = mul_mod(num, u, modulus);
        let (v, u) = p.split(i);
        vd += v;
        den = mul_mod(den, u % modulus, modulus);
    }
    let inv = inv_mod(den, modulus).expect("unit denominator");
    Ok((vn - vd, mul_mod(num, inv, modulus)))
}

/// Unit parts and valuations of `0!, 1!, ..., max!`, so that block
/// binomials cost one inverse each instead of `O(min(b, a - b))` products.
#[derive(Debug, Clone)]
struct FactorialTable {
    valuations: Vec<u64>,
    units: Vec<u64>,
}

impl FactorialTable {
    fn build(max: u64, p: Prime, modulus: u64) -> Self {
        let len = max as usize + 1;
        let mut valuations = Vec::with_capacity(len);
        let mut units = Vec::with_capacity(len);
        valuations.push(0);
        units.push(1 % modulus);
        for i in 1..=max {
            let (v, u) = p.split(i);
            valuations.push(valuations[i as usize - 1] + v);
            units.push(mul_mod(units[i as usize - 1], u % modulus, modulus));
        }
        FactorialTable { valuations, units }
    }

    fn binom(&self, a: u64, b: u64, modulus: u64) -> (u64, u64) {
        let (a, b, c) = (a as usize, b as usize, (a - b) as usize);
        let v = self.valuations[a] - self.valuations[b] - self.valuations[c];
        let den = mul_mod(self.units[b], self.units[c], modulus);
        let inv = inv_mod(den, modulus).expect("unit denominator");
        (v, mul_mod(self.units[a], inv, modulus))
    }
}

/// Largest block value for which a factorial table is worth building.
const TABLE_LIMIT: u64 = 1 << 22;

/// Evaluates a batch of block binomials at a fixed precision, choosing
/// between the multiplicative formula and a factorial table by total cost.
#[derive(Debug)]
pub(crate) struct BlockBinomials {
    prime: Prime,
    precision: u32,
    modulus: u64,
    table: Option<FactorialTable>,
}

impl BlockBinomials {
    pub(crate) fn plan<'a>(
        blocks: impl IntoIterator<Item = (&'a DigitString, &'a DigitString)>,
        prime: Prime,
        precision: u32,
    ) -> Result<Self> {
        let modulus = modulus_for(prime, precision)?;
        let mut max = 0u64;
        let mut work = 0u64;
        let mut word_sized = true;
        for (a, b) in blocks {
            match (a.value_u64(), b.value_u64()) {
                (Some(a), Some(b)) if a >= b => {
                    max = max.max(a);
                    work = work.saturating_add(b.min(a - b));
                }
                _ => word_sized = false,
            }
        }
        let table = (word_sized && max <= TABLE_LIMIT && work > 2 * max)
            .then(|| FactorialTable::build(max, prime, modulus));
        Ok(BlockBinomials { prime, precision, modulus, table })
    }

    pub(crate) fn eval(&self, a: &DigitString, b: &DigitString) -> Result<ValuedUnit> {
        if let (Some(table), Some(x), Some(y)) = (&self.table, a.value_u64(), b.value_u64()) {
            if x < y {
                return Err(Error::OrderViolation);
            }
            if x < table.units.len() as u64 {
                let (v, u) = table.binom(x, y, self.modulus);
                return Ok(ValuedUnit::from_parts_unchecked(self.prime, self.precision, self.modulus, v, u));
            }
        }
        exact_binom_mod(&a.value(), &b.value(), self.prime, self.precision)
    }
}

/// `C(a, b) mod p` for single digits `a, b < p`; zero when `a < b`.
pub(crate) fn digit_binom_mod_p(a: u64, b: u64, p: Prime) -> u64 {
    if a < b {
        return 0;
    }
    // Digits are below p, so no term is divisible by p.
    let (_, u) = binom_u64(a, b, p, p.get());
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::parse_natural;
    use num_traits::One;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn nat3(s: &str) -> Natural {
        parse_natural(s, 3).unwrap()
    }

    #[test]
    fn block_with_two_borrows() {
        // 12120_3 = 150, 01202_3 = 47; C(150, 47) = 45 mod 243.
        let x = exact_binom_mod(&nat3("12120"), &nat3("01202"), p(3), 3).unwrap();
        assert_eq!((x.valuation(), x.unit()), (2, 5));
    }

    #[test]
    fn block_with_one_borrow() {
        // C(16, 5) = 4368 = 3 * 1456; 1456 = 79 mod 81 and 25 mod 27.
        let x = exact_binom_mod(&nat3("121"), &nat3("012"), p(3), 3).unwrap();
        assert_eq!((x.valuation(), x.unit()), (1, 25));
        let x = exact_binom_mod(&nat3("121"), &nat3("012"), p(3), 4).unwrap();
        assert_eq!((x.valuation(), x.unit()), (1, 79));
    }

    #[test]
    fn choose_zero_and_order() {
        let x = exact_binom_mod(&Natural::from(1234), &Natural::zero(), p(7), 2).unwrap();
        assert_eq!((x.valuation(), x.unit()), (0, 1));
        assert_eq!(
            exact_binom_mod(&Natural::from(1), &Natural::from(2), p(7), 2),
            Err(Error::OrderViolation)
        );
    }

    #[test]
    fn big_path_matches_word_path() {
        // a just above 2^64 against the exact binomial.
        let a = BigUint::from(u64::MAX) + BigUint::from(17u32);
        let b = BigUint::from(5u32);
        let mut exact = BigUint::one();
        for i in 0..5u32 {
            exact *= &a - BigUint::from(i);
        }
        exact /= BigUint::from(120u32);
        let q = p(5);
        let mut v = 0;
        while (&exact % 5u32).is_zero() {
            exact /= 5u32;
            v += 1;
        }
        let x = exact_binom_mod(&Natural::from(a), &Natural::from(b), q, 6).unwrap();
        assert_eq!(x.valuation(), v);
        assert_eq!(BigUint::from(x.unit()), exact % 15625u32);
    }

    #[test]
    fn table_agrees_with_direct() {
        let q = p(3);
        let blocks: Vec<(DigitString, DigitString)> = (0..200u64)
            .flat_map(|a| (0..=a).step_by(7).map(move |b| (a, b)))
            .map(|(a, b)| {
                let da = crate::digits::to_base_p(&Natural::from(a), q);
                let db = DigitString::padded(
                    (0..da.len()).map(|i| crate::digits::to_base_p(&Natural::from(b), q).digit(i)).collect(),
                    q,
                )
                .unwrap();
                (da, db)
            })
            .collect();
        let planned = BlockBinomials::plan(blocks.iter().map(|(a, b)| (a, b)), q, 4).unwrap();
        assert!(planned.table.is_some());
        for (a, b) in &blocks {
            let direct = exact_binom_mod(&a.value(), &b.value(), q, 4).unwrap();
            assert_eq!(planned.eval(a, b).unwrap(), direct);
        }
    }

    #[test]
    fn digit_binomials() {
        assert_eq!(digit_binom_mod_p(2, 3, p(5)), 0);
        assert_eq!(digit_binom_mod_p(4, 2, p(5)), 1);
        assert_eq!(digit_binom_mod_p(6, 3, p(7)), 6);
    }
}
