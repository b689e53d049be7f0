use std::fmt;

use crate::error::{Error, Result};
use crate::modular::{mul_mod, pow_mod};

/// A prime number, validated once on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^e`, if it fits in a `u64`.
    pub fn power(self, e: u32) -> Result<u64> {
        self.0.checked_pow(e).ok_or(Error::ModulusTooLarge {
            prime: self.0,
            exponent: e,
        })
    }

    /// Largest `k` with `p^k <= u64::MAX`, together with `p^k`.
    pub(crate) fn max_chunk(self) -> (u32, u64) {
        let mut k = 1;
        let mut pk = self.0;
        while let Some(next) = pk.checked_mul(self.0) {
            pk = next;
            k += 1;
        }
        (k, pk)
    }

    /// Splits `x` into `p^v * u` with `p ∤ u`. `x` must be nonzero.
    #[inline]
    pub(crate) fn split(self, mut x: u64) -> (u64, u64) {
        debug_assert!(x != 0);
        let mut v = 0;
        while x.is_multiple_of(self.0) {
            x /= self.0;
            v += 1;
        }
        (v, x)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
