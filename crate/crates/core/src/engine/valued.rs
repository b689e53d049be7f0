use std::fmt;

use num_bigint::BigUint;

use crate::digits::Natural;
use crate::error::{Error, Result};
use crate::modular::{inv_mod, mul_mod, pow_mod};
use crate::prime::Prime;

/// A p-adic quantity `p^valuation * unit`, with the unit known modulo
/// `p^precision`. The represented value is therefore known modulo
/// `p^(valuation + precision)`.
///
/// Exact zero is a separate state rather than an infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuedUnit {
    prime: Prime,
    precision: u32,
    modulus: u64,
    valuation: u64,
    unit: u64,
    zero: bool,
}

impl ValuedUnit {
    /// `p^valuation * unit`; `unit` is reduced modulo `p^precision` and must
    /// be prime to `p`.
    pub fn new(prime: Prime, precision: u32, valuation: u64, unit: u64) -> Result<Self> {
        let modulus = modulus_for(prime, precision)?;
        if unit.is_multiple_of(prime.get()) {
            return Err(Error::DivisionByZero);
        }
        Ok(ValuedUnit { prime, precision, modulus, valuation, unit: unit % modulus, zero: false })
    }

    pub fn one(prime: Prime, precision: u32) -> Result<Self> {
        Self::new(prime, precision, 0, 1)
    }

    /// `p^k` exactly.
    pub fn prime_power(prime: Prime, precision: u32, k: u64) -> Result<Self> {
        Self::new(prime, precision, k, 1)
    }

    pub fn zero(prime: Prime, precision: u32) -> Result<Self> {
        let modulus = modulus_for(prime, precision)?;
        Ok(ValuedUnit { prime, precision, modulus, valuation: 0, unit: 0, zero: true })
    }

    /// Splits a nonzero residue-free integer into valuation and unit.
    pub fn from_u64(prime: Prime, precision: u32, x: u64) -> Result<Self> {
        if x == 0 {
            return Self::zero(prime, precision);
        }
        let (v, u) = prime.split(x);
        Self::new(prime, precision, v, u)
    }

    pub(crate) fn from_parts_unchecked(prime: Prime, precision: u32, modulus: u64, valuation: u64, unit: u64) -> Self {
        debug_assert!(!unit.is_multiple_of(prime.get()) && unit < modulus);
        ValuedUnit { prime, precision, modulus, valuation, unit, zero: false }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^precision`, the modulus of the unit.
    pub fn unit_modulus(&self) -> u64 {
        self.modulus
    }

    pub fn valuation(&self) -> u64 {
        self.valuation
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    fn check_compatible(&self, other: &ValuedUnit) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::MixedBase(self.prime.get(), other.prime.get()));
        }
        if self.precision != other.precision {
            return Err(Error::PrecisionMismatch(self.precision, other.precision));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ValuedUnit) -> Result<ValuedUnit> {
        self.check_compatible(other)?;
        if self.zero || other.zero {
            return Self::zero(self.prime, self.precision);
        }
        Ok(ValuedUnit {
            valuation: self.valuation + other.valuation,
            unit: mul_mod(self.unit, other.unit, self.modulus),
            ..*self
        })
    }

    /// Quotient, which must stay p-integral.
    pub fn div(&self, other: &ValuedUnit) -> Result<ValuedUnit> {
        self.check_compatible(other)?;
        if other.zero {
            return Err(Error::DivisionByZero);
        }
        if self.zero {
            return Ok(*self);
        }
        let valuation = self.valuation.checked_sub(other.valuation).ok_or(Error::NegativeValuation {
            numerator: self.valuation,
            denominator: other.valuation,
        })?;
        let inv = inv_mod(other.unit, self.modulus).expect("units are invertible");
        Ok(ValuedUnit { valuation, unit: mul_mod(self.unit, inv, self.modulus), ..*self })
    }

    /// The same quantity with the unit reduced to a lower precision.
    pub fn reduce(&self, precision: u32) -> Result<ValuedUnit> {
        if precision > self.precision {
            return Err(Error::PrecisionMismatch(self.precision, precision));
        }
        let modulus = modulus_for(self.prime, precision)?;
        Ok(ValuedUnit { precision, modulus, unit: self.unit % modulus, ..*self })
    }

    /// The value modulo `p^exp`. Requires `exp <= valuation + precision`
    /// unless the valuation alone already reaches `exp`.
    pub fn residue(&self, exp: u32) -> Result<u64> {
        let modulus = modulus_for(self.prime, exp)?;
        if self.zero || self.valuation >= exp as u64 {
            return Ok(0);
        }
        if exp as u64 > self.valuation + self.precision as u64 {
            return Err(Error::PrecisionMismatch(self.precision, exp));
        }
        let scale = pow_mod(self.prime.get(), self.valuation, modulus);
        Ok(mul_mod(scale, self.unit, modulus))
    }

    /// `p^valuation * unit` as an integer, the canonical representative
    /// below `p^(valuation + precision)`.
    pub fn raw_value(&self) -> Natural {
        if self.zero {
            return Natural::zero();
        }
        let scale = BigUint::from(self.prime.get()).pow(self.valuation as u32);
        Natural::from(scale * BigUint::from(self.unit))
    }
}

/// Formats as `u`, `p^v·u` or `0`.
impl fmt::Display for ValuedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            f.write_str("0")
        } else if self.valuation == 0 {
            write!(f, "{}", self.unit)
        } else {
            write!(f, "{}^{}·{}", self.prime, self.valuation, self.unit)
        }
    }
}

pub(crate) fn modulus_for(prime: Prime, precision: u32) -> Result<u64> {
    if precision == 0 {
        return Err(Error::ZeroPrecision);
    }
    prime.power(precision)
}

/// Free-function form of [`ValuedUnit::mul`].
pub fn vu_mul(x: &ValuedUnit, y: &ValuedUnit) -> Result<ValuedUnit> {
    x.mul(y)
}

/// Free-function form of [`ValuedUnit::div`].
pub fn vu_div(x: &ValuedUnit, y: &ValuedUnit) -> Result<ValuedUnit> {
    x.div(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three() -> Prime {
        Prime::new(3).unwrap()
    }

    fn vu(v: u64, u: u64) -> ValuedUnit {
        ValuedUnit::new(three(), 3, v, u).unwrap()
    }

    #[test]
    fn ratio_contributes_eleven() {
        let q = vu_div(&vu(2, 5), &vu(1, 25)).unwrap();
        assert_eq!((q.valuation(), q.unit()), (1, 11));
    }

    #[test]
    fn self_division() {
        let x = vu(2, 13);
        let q = x.div(&x).unwrap();
        assert_eq!((q.valuation(), q.unit()), (0, 1));
    }

    #[test]
    fn equal_valuations_cancel() {
        // 23^{-1} = 20 mod 27 (extended gcd), 10 * 20 = 200 = 7 * 27 + 11.
        let q = vu(2, 10).div(&vu(2, 23)).unwrap();
        assert_eq!((q.valuation(), q.unit()), (0, 11));
    }

    #[test]
    fn negative_valuation_is_an_error() {
        assert_eq!(
            vu(0, 1).div(&vu(1, 1)),
            Err(Error::NegativeValuation { numerator: 0, denominator: 1 })
        );
    }

    #[test]
    fn precision_and_base_mismatch() {
        let a = vu(0, 1);
        let b = ValuedUnit::new(three(), 2, 0, 1).unwrap();
        assert_eq!(a.mul(&b), Err(Error::PrecisionMismatch(3, 2)));
        let c = ValuedUnit::new(Prime::new(5).unwrap(), 3, 0, 1).unwrap();
        assert_eq!(a.div(&c), Err(Error::MixedBase(3, 5)));
    }

    #[test]
    fn units_must_be_prime_to_p() {
        assert!(ValuedUnit::new(three(), 3, 0, 6).is_err());
        let x = ValuedUnit::from_u64(three(), 3, 45).unwrap();
        assert_eq!((x.valuation(), x.unit()), (2, 5));
    }

    #[test]
    fn zero_behaviour() {
        let z = ValuedUnit::zero(three(), 3).unwrap();
        assert!(z.mul(&vu(1, 2)).unwrap().is_zero());
        assert_eq!(vu(1, 2).div(&z), Err(Error::DivisionByZero));
        assert_eq!(z.residue(5).unwrap(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn residues_and_display() {
        let x = vu(2, 5);
        assert_eq!(x.residue(5).unwrap(), 45);
        assert_eq!(x.residue(2).unwrap(), 0);
        assert_eq!(x.residue(6), Err(Error::PrecisionMismatch(3, 6)));
        assert_eq!(x.to_string(), "3^2·5");
        assert_eq!(vu(0, 8).to_string(), "8");
        assert_eq!(x.raw_value(), Natural::from(45));
        assert_eq!(ValuedUnit::new(three(), 4, 1, 79).unwrap().reduce(3).unwrap().unit(), 25);
    }

    #[test]
    fn oversized_precision() {
        assert!(ValuedUnit::one(three(), 41).is_err());
        assert_eq!(ValuedUnit::one(three(), 0), Err(Error::ZeroPrecision));
    }
}
