//! Evaluation traces: the ordered factor list behind a result, rendered as a
//! human table or as `key=value` records.

use std::fmt::{self, Write as _};

use super::valued::ValuedUnit;
use crate::digits::DigitString;
use crate::prime::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Blocks of pseudo-digits.
    Theorem,
    /// Davis-Webb brackets over fixed-width digit windows.
    DavisWebb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Theorem => "theorem",
            Method::DavisWebb => "davis-webb",
        })
    }
}

/// One block binomial (or bracket) in a factor.
///
/// `start` and `len` index pseudo-digits for the theorem method and base-p
/// digits for Davis-Webb. `lifts` counts leading digits a bracket dropped,
/// each contributing one factor of `p`; it is zero for theorem blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub start: usize,
    pub len: usize,
    pub top: DigitString,
    pub bottom: DigitString,
    pub lifts: u64,
    pub value: ValuedUnit,
}

impl Term {
    /// `top/bottom` in big-endian text, padding included.
    pub fn block_text(&self) -> String {
        format!("{}/{}", self.top, self.bottom)
    }

    /// Symbolic form: `C(top/bottom)` for a block binomial, `<top/bottom>`
    /// for a bracket, with the bracket's resolution when it lifted.
    pub fn describe(&self, method: Method) -> String {
        match method {
            Method::Theorem => format!("C({})", self.block_text()),
            Method::DavisWebb => {
                let p = self.value.prime();
                let lifted = self.lifts as usize;
                if lifted == 0 {
                    format!("<{}>", self.block_text())
                } else if lifted >= self.top.len() {
                    format!("<{}>={}^{}", self.block_text(), p, lifted)
                } else {
                    let keep = self.top.len() - lifted;
                    format!(
                        "<{}>={}^{}·C({}/{})",
                        self.block_text(),
                        p,
                        lifted,
                        self.top.window(0, keep),
                        self.bottom.window(0, keep)
                    )
                }
            }
        }
    }
}

/// A leading term, or a quotient of a numerator by a denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub index: usize,
    pub numerator: Term,
    pub denominator: Option<Term>,
    pub value: ValuedUnit,
}

/// Everything behind one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalTrace {
    pub method: Method,
    pub prime: Prime,
    /// Requested modulus exponent `N`.
    pub modulus_exp: u32,
    /// Unit precision of every factor: `n = N - m` for the theorem method,
    /// `N` for Davis-Webb, zero when the result short-circuits.
    pub precision: u32,
    /// Total p-adic valuation of the product.
    pub valuation: u64,
    pub factors: Vec<Factor>,
    pub residue: u64,
}

impl EvalTrace {
    pub fn modulus(&self) -> u64 {
        self.prime.power(self.modulus_exp).expect("validated modulus")
    }

    /// True when the valuation alone forced a zero residue.
    pub fn is_degenerate(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the factor units modulo `p^precision`.
    pub fn combined_unit(&self) -> Option<u64> {
        let mut iter = self.factors.iter().map(|f| f.value);
        let first = iter.next()?;
        iter.try_fold(first, |acc, v| acc.mul(&v)).ok().map(|v| v.unit())
    }

    /// Human-readable table followed by the factor line, the `p^m ×`
    /// product line and the residue.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = self.prime;
        let _ = writeln!(
            out,
            "method: {}  p = {}  N = {}  m = {}  n = {}",
            self.method, p, self.modulus_exp, self.valuation, self.precision
        );
        if self.is_degenerate() {
            let _ = writeln!(
                out,
                "m = {} >= N = {}: p^m divides the binomial",
                self.valuation, self.modulus_exp
            );
            let _ = writeln!(out, "{} (mod {})", self.residue, self.modulus());
            return out;
        }
        let rows: Vec<[String; 6]> = self
            .factors
            .iter()
            .map(|f| {
                [
                    f.index.to_string(),
                    f.numerator.describe(self.method),
                    f.denominator.as_ref().map_or("-".into(), |d| d.describe(self.method)),
                    f.numerator.value.to_string(),
                    f.denominator.as_ref().map_or("-".into(), |d| d.value.to_string()),
                    f.value.to_string(),
                ]
            })
            .collect();
        let header = ["#", "numerator", "denominator", "num", "den", "factor"];
        let mut widths = header.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let mut s = String::new();
            for (cell, w) in cells.iter().zip(widths) {
                let pad = w - cell.chars().count();
                s.push_str(cell);
                s.push_str(&" ".repeat(pad + 2));
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&header.map(String::from)));
        for row in &rows {
            let _ = writeln!(out, "{}", line(row));
        }

        let fractions: Vec<String> = self
            .factors
            .iter()
            .map(|f| match &f.denominator {
                Some(d) => format!("{}/{}", f.numerator.value, d.value),
                None => f.numerator.value.to_string(),
            })
            .collect();
        let _ = writeln!(out, "factors: {}", fractions.join("  "));

        let units: Vec<String> = self
            .factors
            .iter()
            .map(|f| match &f.denominator {
                Some(d) => format!("{}/{}", f.numerator.value.unit(), d.value.unit()),
                None => f.numerator.value.unit().to_string(),
            })
            .collect();
        let unit = self.combined_unit().unwrap_or(1);
        let _ = writeln!(
            out,
            "product: {}^{} × {} ≡ {}^{} × {} (mod {}^{})",
            p,
            self.valuation,
            units.join("·"),
            p,
            self.valuation,
            unit,
            p,
            self.precision
        );
        let _ = writeln!(out, "{} (mod {})", self.residue, self.modulus());
        out
    }

    /// One record per factor with keys
    /// `index num_block den_block val unit prec`, then
    /// `result=<residue> modulus=<p^N>`.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for f in &self.factors {
            let den = f.denominator.as_ref().map_or("-".into(), Term::block_text);
            let _ = writeln!(
                out,
                "index={} num_block={} den_block={} val={} unit={} prec={}",
                f.index,
                f.numerator.block_text(),
                den,
                f.value.valuation(),
                f.value.unit(),
                f.value.precision()
            );
        }
        let _ = writeln!(out, "result={} modulus={}", self.residue, self.modulus());
        out
    }
}

/// A residue together with the trace that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub residue: u64,
    pub trace: EvalTrace,
}

impl Evaluation {
    pub fn modulus(&self) -> u64 {
        self.trace.modulus()
    }
}
