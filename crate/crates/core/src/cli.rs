//! Command-line front-end. Every command returns a [`Report`] so the binary
//! only has to print it and exit with its code.
//!
//! Exit codes: 0 on success, 1 when methods disagree, 2 on usage, parse or
//! precondition errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digits::{parse_natural, DigitString, Natural};
use crate::engine::{davis_webb_evaluate, lucas_evaluate, theorem_evaluate, Evaluation};
use crate::error::{Error, Result};
use crate::oracle::binom_exact;
use crate::prime::Prime;
use crate::pseudo::{decompose, pseudo_valuation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Theorem,
    DavisWebb,
    Lucas,
    Exact,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "pseudodigit",
    version,
    about = "Binomial coefficients modulo prime powers via pseudo-digits",
    after_help = "Without a subcommand, `pseudodigit [OPTIONS] A B` runs `eval`."
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// The prime p.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Modulus exponent N; results are modulo p^N.
    #[arg(long = "mod-exp", global = true, default_value_t = 1)]
    pub mod_exp: u32,
    /// Radix of A and B on the command line (defaults to p).
    #[arg(long, global = true)]
    pub radix: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = MethodChoice::Theorem)]
    pub method: MethodChoice,
    /// Print the factor table.
    #[arg(long, global = true)]
    pub trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `bench`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random pairs for `bench`.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Base-p digit count of each random pair for `bench`.
    #[arg(long, global = true, default_value_t = 100)]
    pub digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate C(A, B) mod p^N.
    Eval { a: String, b: String },
    /// Print the pseudo-digit expansion of (A, B).
    Decompose { a: String, b: String },
    /// Run every method and check that they agree.
    Compare { a: String, b: String },
    /// Time the pseudo-digit method on random pairs.
    Bench,
}

/// Validated configuration shared by all commands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub prime: Prime,
    pub modulus_exp: u32,
    pub radix: u32,
    pub method: MethodChoice,
    pub trace: bool,
    pub format: Format,
    pub seed: u64,
    pub trials: usize,
    pub digits: usize,
}

impl CliConfig {
    pub fn new(prime: u64, modulus_exp: u32) -> Result<Self> {
        let prime = Prime::new(prime)?;
        Self::from_opts(&Opts {
            prime: Some(prime.get()),
            mod_exp: modulus_exp,
            radix: None,
            method: MethodChoice::Theorem,
            trace: false,
            format: Format::Text,
            seed: 0,
            trials: 20,
            digits: 100,
        })
    }

    pub fn from_opts(opts: &Opts) -> Result<Self> {
        let prime = Prime::new(opts.prime.ok_or(Error::EmptyInput)?)?;
        if opts.mod_exp == 0 {
            return Err(Error::ZeroPrecision);
        }
        prime.power(opts.mod_exp)?;
        let radix = match opts.radix {
            Some(r) => r,
            None if prime.get() <= 36 => prime.get() as u32,
            None => return Err(Error::InvalidRadix(u32::try_from(prime.get()).unwrap_or(u32::MAX))),
        };
        if !(2..=36).contains(&radix) {
            return Err(Error::InvalidRadix(radix));
        }
        Ok(CliConfig {
            prime,
            modulus_exp: opts.mod_exp,
            radix,
            method: opts.method,
            trace: opts.trace,
            format: opts.format,
            seed: opts.seed,
            trials: opts.trials,
            digits: opts.digits,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.prime.power(self.modulus_exp).expect("checked in from_opts")
    }

    fn parse_pair(&self, a: &str, b: &str) -> Result<(Natural, Natural)> {
        let a = parse_natural(a, self.radix)?;
        let b = parse_natural(b, self.radix)?;
        if a < b {
            return Err(Error::OrderViolation);
        }
        Ok((a, b))
    }
}

/// Output of one command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Report {
    fn usage(err: impl std::fmt::Display) -> Self {
        Report { stdout: String::new(), stderr: format!("error: {err}\n"), code: EXIT_USAGE }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(with_default_command(args)) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            let code = err.exit_code();
            return if code == 0 {
                Report { stdout: text, stderr: String::new(), code: EXIT_OK }
            } else {
                Report { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            };
        }
    };
    let config = match CliConfig::from_opts(&cli.opts) {
        Ok(c) => c,
        Err(Error::EmptyInput) if cli.opts.prime.is_none() => return Report::usage("--prime is required"),
        Err(e) => return Report::usage(e),
    };
    match cli.command {
        Command::Eval { a, b } => run_eval(&config, &a, &b),
        Command::Decompose { a, b } => run_decompose(&config, &a, &b),
        Command::Compare { a, b } => run_compare(&config, &a, &b),
        Command::Bench => run_bench(&config),
    }
}

const SUBCOMMANDS: [&str; 5] = ["eval", "decompose", "compare", "bench", "help"];
const VALUED_OPTIONS: [&str; 8] =
    ["--prime", "--mod-exp", "--radix", "--method", "--format", "--seed", "--trials", "--digits"];

/// Inserts `eval` before the first bare operand when no subcommand is named,
/// so `pseudodigit --prime 3 A B` works.
fn with_default_command<I, T>(args: I) -> Vec<OsString>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let mut expects_value = false;
    let mut first_operand = None;
    for (i, arg) in args.iter().enumerate().skip(1) {
        let text = arg.to_string_lossy();
        if expects_value {
            expects_value = false;
        } else if text.starts_with("--") {
            expects_value = VALUED_OPTIONS.contains(&text.as_ref());
        } else if SUBCOMMANDS.contains(&text.as_ref()) {
            return args;
        } else if !text.starts_with('-') || text.len() == 1 {
            first_operand.get_or_insert(i);
        }
    }
    if let Some(i) = first_operand {
        args.insert(i, "eval".into());
    }
    args
}

fn exact_residue(a: &Natural, b: &Natural, modulus: u64) -> Result<u64> {
    let c = binom_exact(a, b)?;
    Ok((c.as_biguint() % BigUint::from(modulus)).to_u64().expect("below modulus"))
}

fn result_line(config: &CliConfig, residue: u64, modulus: u64) -> String {
    match config.format {
        Format::Text => format!("{residue} (mod {modulus})\n"),
        Format::Records => format!("result={residue} modulus={modulus}\n"),
    }
}

fn evaluation_output(config: &CliConfig, ev: &Evaluation) -> String {
    match (config.trace, config.format) {
        (true, Format::Text) => ev.trace.render_text(),
        (true, Format::Records) => ev.trace.render_records(),
        (false, _) => result_line(config, ev.residue, ev.modulus()),
    }
}

/// `eval`: prints the residue, or the factor table with `--trace`.
pub fn run_eval(config: &CliConfig, a: &str, b: &str) -> Report {
    let (a, b) = match config.parse_pair(a, b) {
        Ok(pair) => pair,
        Err(e) => return Report::usage(e),
    };
    let p = config.prime;
    let n = config.modulus_exp;
    let mut report = Report::default();
    let outcome: Result<()> = (|| {
        match config.method {
            MethodChoice::Theorem => report.stdout = evaluation_output(config, &theorem_evaluate(&a, &b, p, n)?),
            MethodChoice::DavisWebb => {
                report.stdout = evaluation_output(config, &davis_webb_evaluate(&a, &b, p, n)?)
            }
            MethodChoice::Lucas => {
                if n != 1 {
                    report.stderr.push_str("note: lucas evaluates modulo p only\n");
                }
                report.stdout = result_line(config, lucas_evaluate(&a, &b, p)?, p.get());
            }
            MethodChoice::Exact => {
                report.stdout = result_line(config, exact_residue(&a, &b, config.modulus())?, config.modulus())
            }
            MethodChoice::All => {
                let m = config.modulus();
                let mut rows = vec![
                    ("theorem", Ok(theorem_evaluate(&a, &b, p, n)?.residue), m),
                    ("davis-webb", Ok(davis_webb_evaluate(&a, &b, p, n)?.residue), m),
                    ("exact", exact_residue(&a, &b, m), m),
                ];
                rows.push(("lucas", lucas_evaluate(&a, &b, p), p.get()));
                for (name, value, modulus) in rows {
                    match (value, config.format) {
                        (Ok(v), Format::Text) => {
                            let _ = writeln!(report.stdout, "{name}: {v} (mod {modulus})");
                        }
                        (Ok(v), Format::Records) => {
                            let _ = writeln!(report.stdout, "method={name} result={v} modulus={modulus}");
                        }
                        (Err(Error::TooLarge), _) => {
                            let _ = writeln!(report.stderr, "{name}: skipped (input too large)");
                        }
                        (Err(e), _) => return Err(e),
                    }
                }
            }
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => report,
        Err(e) => Report::usage(e),
    }
}

/// `decompose`: both parenthesized expansions, the pair count and `m`.
pub fn run_decompose(config: &CliConfig, a: &str, b: &str) -> Report {
    let (a, b) = match config.parse_pair(a, b) {
        Ok(pair) => pair,
        Err(e) => return Report::usage(e),
    };
    let e = match decompose(&a, &b, config.prime) {
        Ok(e) => e,
        Err(err) => return Report::usage(err),
    };
    let m = pseudo_valuation(&e);
    let stdout = match config.format {
        Format::Text => format!(
            "A = {}\nB = {}\npairs = {}\nm = {}\n",
            e.render_a(),
            e.render_b(),
            e.pairs().len(),
            m
        ),
        Format::Records => format!(
            "a={} b={} pairs={} m={}\n",
            e.render_a(),
            e.render_b(),
            e.pairs().len(),
            m
        ),
    };
    Report { stdout, stderr: String::new(), code: EXIT_OK }
}

/// A named way of computing `C(A, B) mod p^N`, for [`run_compare_with`].
pub type Evaluator = (&'static str, fn(&Natural, &Natural, Prime, u32) -> Result<u64>);

fn theorem_residue(a: &Natural, b: &Natural, p: Prime, n: u32) -> Result<u64> {
    theorem_evaluate(a, b, p, n).map(|ev| ev.residue)
}

fn davis_webb_residue(a: &Natural, b: &Natural, p: Prime, n: u32) -> Result<u64> {
    davis_webb_evaluate(a, b, p, n).map(|ev| ev.residue)
}

fn exact_oracle_residue(a: &Natural, b: &Natural, p: Prime, n: u32) -> Result<u64> {
    exact_residue(a, b, p.power(n)?)
}

pub const DEFAULT_EVALUATORS: [Evaluator; 3] = [
    ("theorem", theorem_residue),
    ("davis-webb", davis_webb_residue),
    ("exact", exact_oracle_residue),
];

/// `compare`: theorem, Davis-Webb and (when small enough) the exact oracle.
pub fn run_compare(config: &CliConfig, a: &str, b: &str) -> Report {
    run_compare_with(config, a, b, &DEFAULT_EVALUATORS)
}

/// `compare` over an arbitrary evaluator set. Evaluators that report
/// [`Error::TooLarge`] are skipped with a notice.
pub fn run_compare_with(config: &CliConfig, a: &str, b: &str, evaluators: &[Evaluator]) -> Report {
    let (a, b) = match config.parse_pair(a, b) {
        Ok(pair) => pair,
        Err(e) => return Report::usage(e),
    };
    let modulus = config.modulus();
    let mut report = Report::default();
    let mut seen = Vec::new();
    for (name, eval) in evaluators {
        match eval(&a, &b, config.prime, config.modulus_exp) {
            Ok(v) => {
                let _ = match config.format {
                    Format::Text => writeln!(report.stdout, "{name}: {v} (mod {modulus})"),
                    Format::Records => writeln!(report.stdout, "method={name} result={v} modulus={modulus}"),
                };
                seen.push(v);
            }
            Err(Error::TooLarge) => {
                let _ = writeln!(report.stderr, "{name}: skipped (input too large)");
            }
            Err(e) => return Report::usage(e),
        }
    }
    let agree = seen.windows(2).all(|w| w[0] == w[1]);
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    let _ = match config.format {
        Format::Text => writeln!(report.stdout, "{verdict}"),
        Format::Records => writeln!(report.stdout, "verdict={verdict}"),
    };
    report.code = if agree { EXIT_OK } else { EXIT_DISAGREE };
    report
}

/// Random `(A, B)` with exactly `digits` base-p digits in `A` and
/// `A >= B`, drawn by rejection.
pub fn random_pair(rng: &mut impl Rng, p: Prime, digits: usize) -> (Natural, Natural) {
    let digits = digits.max(1);
    let draw = |rng: &mut dyn rand::RngCore, nonzero_top: bool| -> Vec<u64> {
        let mut d: Vec<u64> = (0..digits).map(|_| rng.gen_range(0..p.get())).collect();
        if nonzero_top && digits > 1 {
            d[digits - 1] = rng.gen_range(1..p.get());
        }
        d
    };
    loop {
        let a = DigitString::padded(draw(rng, true), p).expect("digits below p");
        let b = DigitString::padded(draw(rng, false), p).expect("digits below p");
        if a.cmp_value(&b) != std::cmp::Ordering::Less {
            return (a.value(), b.value());
        }
    }
}

/// Summary of a benchmark run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchSummary {
    pub trials: usize,
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: usize,
    pub zero_by_valuation: usize,
    /// Pseudo-digit length -> count over all trials.
    pub lengths: BTreeMap<usize, usize>,
}

/// Runs the benchmark and returns its summary along with elapsed seconds
/// for the theorem method and the oracle.
pub fn bench(config: &CliConfig) -> Result<(BenchSummary, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pairs: Vec<(Natural, Natural)> =
        (0..config.trials).map(|_| random_pair(&mut rng, config.prime, config.digits)).collect();
    let p = config.prime;
    let n = config.modulus_exp;
    let mut summary = BenchSummary { trials: pairs.len(), ..Default::default() };

    let start = Instant::now();
    let mut results = Vec::with_capacity(pairs.len());
    for (a, b) in &pairs {
        let e = decompose(a, b, p)?;
        for pair in e.pairs() {
            *summary.lengths.entry(pair.len()).or_default() += 1;
        }
        let ev = crate::engine::evaluate_expansion(&e, n)?;
        if ev.trace.is_degenerate() {
            summary.zero_by_valuation += 1;
        }
        results.push(ev.residue);
    }
    let theorem_secs = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let modulus = config.modulus();
    for ((a, b), &r) in pairs.iter().zip(&results) {
        match exact_residue(a, b, modulus) {
            Ok(v) => {
                summary.checked += 1;
                if v != r {
                    summary.mismatches += 1;
                }
            }
            Err(Error::TooLarge) => summary.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let oracle_secs = start.elapsed().as_secs_f64();
    Ok((summary, theorem_secs, oracle_secs))
}

/// `bench`: throughput of the theorem method against the exact oracle and
/// the distribution of pseudo-digit lengths.
pub fn run_bench(config: &CliConfig) -> Report {
    let (s, t_secs, o_secs) = match bench(config) {
        Ok(r) => r,
        Err(e) => return Report::usage(e),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bench: p={} N={} digits={} trials={} seed={}",
        config.prime, config.modulus_exp, config.digits, config.trials, config.seed
    );
    let rate = if t_secs > 0.0 { s.trials as f64 / t_secs } else { f64::INFINITY };
    let _ = writeln!(
        out,
        "theorem: {} evaluations in {:.6} s ({:.1}/s), {} zero by valuation",
        s.trials, t_secs, rate, s.zero_by_valuation
    );
    let _ = writeln!(
        out,
        "oracle: {} checked in {:.6} s, {} skipped (too large), {} mismatches",
        s.checked, o_secs, s.skipped, s.mismatches
    );
    let hist: Vec<String> = s.lengths.iter().map(|(len, count)| format!("{len}:{count}")).collect();
    let _ = writeln!(out, "pseudo-digit lengths: {}", hist.join(" "));
    Report {
        stdout: out,
        stderr: String::new(),
        code: if s.mismatches == 0 { EXIT_OK } else { EXIT_DISAGREE },
    }
}
