//! `C(A, B) mod p^(n+m)` from blocks of `n` consecutive pseudo-digits.
//!
//! With `d` the index of the top pseudo-digit, the product is the block
//! binomial over pseudo-digits `d-n+1..=d`, times, for `i = d-n` down to 0,
//! the block over `i..i+n` divided by the block over `i+1..i+n`. Every
//! quotient is p-integral with valuation `v_p C(a_i, b_i)`, so only units
//! modulo `p^n` need to be tracked.

use super::binom::BlockBinomials;
use super::trace::{EvalTrace, Evaluation, Factor, Method, Term};
use super::valued::{modulus_for, ValuedUnit};
use crate::digits::{DigitString, Natural};
use crate::error::Result;
use crate::prime::Prime;
use crate::pseudo::{block, decompose, pseudo_valuation, PseudoExpansion};

struct BlockRef {
    start: usize,
    len: usize,
    top: DigitString,
    bottom: DigitString,
}

fn block_ref(e: &PseudoExpansion, start: usize, len: usize) -> Result<BlockRef> {
    let (top, bottom) = block(e, start, len)?;
    Ok(BlockRef { start, len, top, bottom })
}

/// The factors of the pseudo-digit product for block size `n`, each
/// materialized at unit precision `n`.
pub fn theorem_factors(e: &PseudoExpansion, n: u32) -> Result<Vec<Factor>> {
    let p = e.base();
    modulus_for(p, n)?;
    let d = e.d();
    let width = n as usize;

    // When d + 1 <= n this is the whole expansion, zero-padded above d.
    let lead_start = (d + 1).saturating_sub(width);
    let mut refs = vec![(block_ref(e, lead_start, width)?, None)];
    if d >= width {
        for i in (0..=d - width).rev() {
            let num = block_ref(e, i, width)?;
            let den = if width > 1 { Some(block_ref(e, i + 1, width - 1)?) } else { None };
            refs.push((num, den));
        }
    }

    let blocks = refs.iter().flat_map(|(num, den)| {
        std::iter::once(num).chain(den.as_ref()).map(|s| (&s.top, &s.bottom))
    });
    let binomials = BlockBinomials::plan(blocks, p, n)?;
    let term = |s: BlockRef| -> Result<Term> {
        let value = binomials.eval(&s.top, &s.bottom)?;
        Ok(Term { start: s.start, len: s.len, top: s.top, bottom: s.bottom, lifts: 0, value })
    };

    refs
        .into_iter()
        .enumerate()
        .map(|(index, (num, den))| {
            let numerator = term(num)?;
            let denominator = den.map(term).transpose()?;
            let value = match &denominator {
                Some(den) => numerator.value.div(&den.value)?,
                None => numerator.value,
            };
            Ok(Factor { index, numerator, denominator, value })
        })
        .collect()
}

/// `C(A, B) mod p^N` by the pseudo-digit product with `n = N - m`.
pub fn theorem_evaluate(a: &Natural, b: &Natural, p: Prime, modulus_exp: u32) -> Result<Evaluation> {
    modulus_for(p, modulus_exp)?;
    let e = decompose(a, b, p)?;
    evaluate_expansion(&e, modulus_exp)
}

/// As [`theorem_evaluate`], reusing an existing expansion.
pub fn evaluate_expansion(e: &PseudoExpansion, modulus_exp: u32) -> Result<Evaluation> {
    let p = e.base();
    modulus_for(p, modulus_exp)?;
    let m = pseudo_valuation(e);
    debug_assert_eq!(
        Some(m),
        crate::oracle::kummer_valuation(e.a(), e.b(), p).ok().map(|v| v as u64),
        "pseudo-digit valuation disagrees with the borrow count"
    );

    if m >= modulus_exp as u64 {
        let trace = EvalTrace {
            method: Method::Theorem,
            prime: p,
            modulus_exp,
            precision: 0,
            valuation: m,
            factors: Vec::new(),
            residue: 0,
        };
        return Ok(Evaluation { residue: 0, trace });
    }

    let n = modulus_exp - m as u32;
    let factors = theorem_factors(e, n)?;
    let mut product = ValuedUnit::one(p, n)?;
    for f in &factors {
        product = product.mul(&f.value)?;
    }
    assert_eq!(product.valuation(), m, "factor valuations must sum to m");
    let residue = product.residue(modulus_exp)?;
    let trace = EvalTrace {
        method: Method::Theorem,
        prime: p,
        modulus_exp,
        precision: n,
        valuation: m,
        factors,
        residue,
    };
    Ok(Evaluation { residue, trace })
}
