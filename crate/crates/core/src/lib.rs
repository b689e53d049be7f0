//! Binomial coefficients `C(A, B)` modulo prime powers.
//!
//! The main route splits `(A, B)` into pseudo-digits, which are groups of
//! base-p digits that close as soon as `A`'s group is at least `B`'s. Blocks
//! of `n` consecutive pseudo-digits then give `C(A, B)` modulo `p^(n+m)`,
//! where `m = v_p C(A, B)`. The Davis-Webb bracket product and Lucas's
//! theorem are provided for comparison, and [`oracle`] holds brute-force
//! ground truth.
//!
//! ```
//! use pseudodigit::{parse_natural, theorem_evaluate, Prime};
//!
//! let p = Prime::new(3).unwrap();
//! let a = parse_natural("1221121202", 3).unwrap();
//! let b = parse_natural("1011012021", 3).unwrap();
//! let ev = theorem_evaluate(&a, &b, p, 5).unwrap();
//! assert_eq!(ev.residue, 18);
//! ```

pub mod cli;
pub mod digits;
pub mod engine;
mod error;
pub mod modular;
pub mod oracle;
mod prime;
pub mod pseudo;

pub use digits::{
    add_with_carries, concat_value, from_base_p, from_digits, parse_natural, subtract_with_borrows, to_base_p,
    DigitString, Natural,
};
pub use engine::{
    davis_webb_evaluate, dw_bracket, evaluate_expansion, exact_binom_mod, lucas_evaluate, theorem_evaluate,
    theorem_factors, vu_div, vu_mul, DwBracket, EvalTrace, Evaluation, Factor, Method, Term, ValuedUnit,
};
pub use error::{Error, Result};
pub use oracle::{binom_exact, binom_mod_pascal, kummer_valuation};
pub use prime::{is_prime, Prime};
pub use pseudo::{block, block_valuation, decompose, pseudo_valuation, PseudoExpansion, PseudoPair};
