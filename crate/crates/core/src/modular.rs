//! Word-sized modular arithmetic. Moduli are at most `u64::MAX`; products go
//! through `u128`.

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_small_moduli() {
        for m in 2..200u64 {
            for a in 0..m {
                let g = num_integer::gcd(a, m);
                match inv_mod(a, m) {
                    Some(x) => {
                        assert_eq!(g, 1);
                        assert_eq!(mul_mod(a, x, m), 1);
                    }
                    None => assert_ne!(g, 1),
                }
            }
        }
    }

    #[test]
    fn inverse_of_23_mod_27() {
        // 23 * 20 = 460 = 17 * 27 + 1
        assert_eq!(inv_mod(23, 27), Some(20));
    }

    #[test]
    fn near_max_modulus() {
        let m = u64::MAX;
        let a = m - 2;
        let x = inv_mod(a, m).unwrap();
        assert_eq!(mul_mod(a, x, m), 1);
        assert_eq!(pow_mod(2, 64, m), 1);
    }
}
