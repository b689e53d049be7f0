use super::binom::digit_binom_mod_p;
use crate::digits::{to_base_p, Natural};
use crate::error::{Error, Result};
use crate::modular::mul_mod;
use crate::prime::Prime;

/// `C(A, B) mod p` as the product of digit binomials `C(α_j, β_j)`.
pub fn lucas_evaluate(a: &Natural, b: &Natural, p: Prime) -> Result<u64> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    let da = to_base_p(a, p);
    let db = to_base_p(b, p);
    let mut acc = 1 % p.get();
    for (i, &alpha) in da.digits().iter().enumerate() {
        let term = digit_binom_mod_p(alpha, db.digit(i), p);
        if term == 0 {
            return Ok(0);
        }
        acc = mul_mod(acc, term, p.get());
    }
    Ok(acc)
}
