//! The Davis-Webb bracket product modulo `p^N` over fixed windows of `N`
//! base-p digits.

use std::cmp::Ordering;

use super::binom::BlockBinomials;
use super::trace::{EvalTrace, Evaluation, Factor, Method, Term};
use super::valued::{modulus_for, ValuedUnit};
use crate::digits::{to_base_p, DigitString, Natural};
use crate::error::{Error, Result};
use crate::prime::Prime;

/// A resolved bracket: `p^valuation` times the binomial of the truncated
/// blocks `top/bottom`. When every digit was dropped the blocks are empty
/// and the value is a pure power of `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DwBracket {
    pub valuation: u64,
    pub top: DigitString,
    pub bottom: DigitString,
    pub value: ValuedUnit,
}

/// Drops leading digits while the top block is strictly smaller. Equal
/// blocks take the binomial branch.
fn resolve(a: &DigitString, b: &DigitString) -> Result<(u64, DigitString, DigitString)> {
    if a.base() != b.base() {
        return Err(Error::MixedBase(a.base().get(), b.base().get()));
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyBlock);
    }
    let mut len = a.len();
    let mut lifts = 0;
    while len > 0 && a.window(0, len).cmp_value(&b.window(0, len)) == Ordering::Less {
        lifts += 1;
        len -= 1;
    }
    Ok((lifts, a.window(0, len), b.window(0, len)))
}

/// Evaluates the bracket `<a/b>` at unit precision `e`.
pub fn dw_bracket(a: &DigitString, b: &DigitString, p: Prime, e: u32) -> Result<DwBracket> {
    if a.base() != p {
        return Err(Error::MixedBase(a.base().get(), p.get()));
    }
    let (valuation, top, bottom) = resolve(a, b)?;
    let binomials = BlockBinomials::plan([(&top, &bottom)], p, e)?;
    let value = bracket_value(&binomials, valuation, &top, &bottom, p, e)?;
    Ok(DwBracket { valuation, top, bottom, value })
}

fn bracket_value(
    binomials: &BlockBinomials,
    lifts: u64,
    top: &DigitString,
    bottom: &DigitString,
    p: Prime,
    e: u32,
) -> Result<ValuedUnit> {
    let lift = ValuedUnit::prime_power(p, e, lifts)?;
    if top.is_empty() {
        return Ok(lift);
    }
    binomials.eval(top, bottom)?.mul(&lift)
}

struct Window {
    start: usize,
    len: usize,
    top: DigitString,
    bottom: DigitString,
    lifts: u64,
    source: (DigitString, DigitString),
}

/// `C(A, B) mod p^N` as the leading bracket over the top `N` digits times,
/// for `i = L-N-1` down to 0, the bracket over digits `i..i+N` divided by
/// the bracket over `i+1..i+N`. Digits are zero-padded to `L >= N`.
pub fn davis_webb_evaluate(a: &Natural, b: &Natural, p: Prime, modulus_exp: u32) -> Result<Evaluation> {
    if a < b {
        return Err(Error::OrderViolation);
    }
    modulus_for(p, modulus_exp)?;
    let width = modulus_exp as usize;
    let da = to_base_p(a, p);
    let db = to_base_p(b, p);
    let total = da.len().max(width);

    let window = |start: usize, len: usize| -> Result<Window> {
        let (top, bottom) = (da.window(start, len), db.window(start, len));
        let (lifts, st, sb) = resolve(&top, &bottom)?;
        Ok(Window { start, len, top, bottom, lifts, source: (st, sb) })
    };

    let mut windows = vec![(window(total - width, width)?, None)];
    for i in (0..total - width).rev() {
        let den = if width > 1 { Some(window(i + 1, width - 1)?) } else { None };
        windows.push((window(i, width)?, den));
    }

    let sources = windows.iter().flat_map(|(num, den)| {
        std::iter::once(num)
            .chain(den.as_ref())
            .filter(|w| !w.source.0.is_empty())
            .map(|w| (&w.source.0, &w.source.1))
    });
    let binomials = BlockBinomials::plan(sources, p, modulus_exp)?;
    let term = |w: Window| -> Result<Term> {
        let value = bracket_value(&binomials, w.lifts, &w.source.0, &w.source.1, p, modulus_exp)?;
        Ok(Term { start: w.start, len: w.len, top: w.top, bottom: w.bottom, lifts: w.lifts, value })
    };

    let mut product = ValuedUnit::one(p, modulus_exp)?;
    let mut factors = Vec::with_capacity(windows.len());
    for (index, (num, den)) in windows.into_iter().enumerate() {
        let numerator = term(num)?;
        let denominator = den.map(term).transpose()?;
        let value = match &denominator {
            Some(d) => numerator.value.div(&d.value)?,
            None => numerator.value,
        };
        product = product.mul(&value)?;
        factors.push(Factor { index, numerator, denominator, value });
    }
    let residue = product.residue(modulus_exp)?;
    let trace = EvalTrace {
        method: Method::DavisWebb,
        prime: p,
        modulus_exp,
        precision: modulus_exp,
        valuation: product.valuation(),
        factors,
        residue,
    };
    Ok(Evaluation { residue, trace })
}
