//! Command-line front end for the exact Korobov / Frobenius-Euler toolkit:
//! `table` prints number-family tables, `verify` runs identity suites, and
//! `formula` prints the closed form of d^N/dt^N 1/log(1+t).
//!
//! Exit codes: 0 on success, 1 when a verification suite finds an identity
//! violation, 2 on usage or parameter errors. Identical invocations produce
//! byte-identical output.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use korobov::frobenius::TriangleBMode;
use korobov::loginv::DerivativeFormula;
use korobov::{Binding, Rational};

mod render;
mod suites;
mod tables;

#[derive(Parser)]
#[command(
    name = "korobov",
    version,
    about = "Exact tables, identity suites, and derivative formulas for the \
             Korobov and Frobenius-Euler number families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a number-family table
    Table(TableArgs),
    /// Run an identity-verification suite and report each instance
    Verify(VerifyArgs),
    /// Print the closed form of the N-th derivative of 1/log(1+t)
    Formula(FormulaArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Korobov numbers K_n(λ)
    Korobov,
    /// Korobov polynomials K_n(λ, x) — exactly one of λ, x left symbolic
    KorobovPoly,
    /// Order-m Korobov numbers K_n^(m)(λ)
    KorobovOrderM,
    /// Frobenius-Euler numbers H_n(μ), μ symbolic
    FrobeniusEuler,
    /// Coefficient triangle a_j(N) for the Korobov derivative identity
    TriangleA,
    /// Coefficient triangle b_j(N) for the degenerate/limit identity
    TriangleB,
    /// Iterated harmonic-sum table H_{N,j}
    Harmonic,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// N-th derivative identity for the Korobov generating function
    OdeKorobov,
    /// Order-m sum rule, scalar instances and the series form
    OrderM,
    /// Triangle a_j(N): recurrence vs closed form and boundary columns
    TriangleA,
    /// λ→0 trailing-term extraction against the harmonic table
    LambdaLimit,
    /// Closed form of the derivatives of 1/log(1+t)
    Loginv,
    /// N-th derivative identity for the degenerate/limit series
    OdeFrobenius,
    /// Triangle b_j(N): recurrence vs closed form and boundary columns
    TriangleB,
    /// Degenerate triangle interpolated at λ=0 against the limit triangle
    LimitConsistency,
    /// Every suite at its defaults
    All,
}

#[derive(Args)]
struct TableArgs {
    /// Number family to tabulate
    #[arg(long, value_enum)]
    family: Family,
    /// λ binding: 'sym' or a rational like 3/2 (family-dependent default)
    #[arg(long)]
    lambda: Option<String>,
    /// μ binding: only 'sym' is meaningful; bound μ is rejected
    #[arg(long)]
    mu: Option<String>,
    /// x binding for the polynomial family: 'sym' or a rational (default 0)
    #[arg(long)]
    x: Option<String>,
    /// Sequence order m for korobov-order-m (default 2)
    #[arg(long)]
    m: Option<usize>,
    /// Largest index n / row N
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Series truncation order for verification suites (unused by tables)
    #[arg(long, default_value_t = 24)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity suite to run
    #[arg(value_enum)]
    suite: Suite,
    /// λ binding where applicable: 'sym' or a rational (0 = frobenius limit
    /// mode); omitting it picks each suite's default spread
    #[arg(long)]
    lambda: Option<String>,
    /// μ binding: only 'sym' is meaningful; bound μ is rejected
    #[arg(long)]
    mu: Option<String>,
    /// Largest derivative order / triangle row N
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Series truncation order
    #[arg(long, default_value_t = 24)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Corrupt one triangle entry before comparing, to exercise the failure
    /// path end-to-end (triangle suites only)
    #[arg(long, hide = true)]
    inject_failure: bool,
}

#[derive(Args)]
struct FormulaArgs {
    /// Derivative order N ≥ 1
    n: usize,
    /// json, latex, or csv (csv selects the flat plain-text rendering)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (document, code, out) = match &cli.command {
        Command::Table(args) => match tables::run(args) {
            Ok(doc) => (doc, ExitCode::SUCCESS, args.out.clone()),
            Err(message) => return usage_error(&message),
        },
        Command::Verify(args) => match suites::run(args) {
            Ok((doc, all_passed)) => {
                let code = if all_passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                };
                (doc, code, args.out.clone())
            }
            Err(message) => return usage_error(&message),
        },
        Command::Formula(args) => match run_formula(args) {
            Ok(doc) => (doc, ExitCode::SUCCESS, args.out.clone()),
            Err(message) => return usage_error(&message),
        },
    };
    if let Err(e) = emit(out.as_deref(), &document) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    code
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn run_formula(args: &FormulaArgs) -> Result<String, String> {
    let formula = DerivativeFormula::new(args.n).map_err(|e| e.to_string())?;
    Ok(match args.format {
        Format::Json => serde_json::to_string(&formula).expect("formula serializes infallibly"),
        Format::Latex => formula.latex(),
        Format::Csv => formula.plain(),
    })
}

fn emit(out: Option<&std::path::Path>, document: &str) -> std::io::Result<()> {
    let mut text = document.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// "sym" → symbolic, "p/q" → bound rational.
fn parse_binding(text: &str) -> Result<Binding, String> {
    if text == "sym" {
        return Ok(Binding::Symbolic);
    }
    text.parse::<Rational>()
        .map(Binding::Bound)
        .map_err(|_| format!("expected 'sym' or a rational literal like 3/2, got {text:?}"))
}

fn binding_or_symbolic(lambda: &Option<String>) -> Result<Binding, String> {
    match lambda {
        Some(text) => parse_binding(text),
        None => Ok(Binding::Symbolic),
    }
}

/// Triangle-b λ handling: a bound rational selects the degenerate triangle,
/// 0 the limit triangle; symbolic λ has no meaning there.
fn triangle_b_mode(lambda: &Option<String>) -> Result<TriangleBMode, String> {
    match lambda {
        None => Ok(TriangleBMode::Limit),
        Some(text) => match parse_binding(text)? {
            Binding::Symbolic => Err(
                "triangle-b needs a bound rational λ (0 selects the limit triangle)".to_string(),
            ),
            Binding::Bound(r) => Ok(TriangleBMode::from_lambda(r)),
        },
    }
}

fn require_symbolic_mu(mu: &Option<String>) -> Result<(), String> {
    match mu.as_deref() {
        None | Some("sym") => Ok(()),
        Some(other) => Err(format!(
            "μ stays symbolic in every family (it must remain invertible); \
             pass 'sym' or omit --mu, got {other:?}"
        )),
    }
}
