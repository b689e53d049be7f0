//! Three routes to `C(A, B) mod p^N`: the pseudo-digit block product, the
//! Davis-Webb bracket product, and Lucas's digitwise product modulo `p`.

mod binom;
mod davis_webb;
mod lucas;
mod theorem;
mod trace;
mod valued;

pub use binom::exact_binom_mod;
pub use davis_webb::{davis_webb_evaluate, dw_bracket, DwBracket};
pub use lucas::lucas_evaluate;
pub use theorem::{evaluate_expansion, theorem_evaluate, theorem_factors};
pub use trace::{EvalTrace, Evaluation, Factor, Method, Term};
pub use valued::{vu_div, vu_mul, ValuedUnit};
