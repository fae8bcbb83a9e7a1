use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Exact type-B deformed Fock spaces: operators, partitions, moments.
#[derive(Parser, Debug)]
#[command(name = "fockb", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the signed permutation group Σ(n).
    Group(GroupArgs),
    /// Enumerate colored or marked set partitions.
    Partitions(PartitionArgs),
    /// Symmetrizer and operator matrices on one level.
    Fock(FockArgs),
    /// Mixed moments of the type-B field operators.
    Moment(MomentArgs),
    /// Moments of the (q,t) field operators.
    Qt(QtArgs),
    /// Orthogonal polynomial tables and moment sequences.
    Orthopoly(OrthopolyArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    n: usize,
    /// One CSV row per element: window, l1, l2, word.
    #[arg(long)]
    stats: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    NoSingletons,
    PairsOnly,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    /// Append all statistics columns.
    #[arg(long)]
    stats: bool,
    /// Enumerate marked (extended) partitions.
    #[arg(long)]
    extended: bool,
    /// Restrict extended partitions to those compatible with a word over `*`, `1`, `'`.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Rational,
    Float,
}

/// Space and deformation parameters shared by several subcommands.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Dimension of H; defaults to the signature length, or 1.
    #[arg(long)]
    d: Option<usize>,
    /// Signs of the diagonal involution, e.g. `+-`.
    #[arg(long, allow_hyphen_values = true)]
    signature: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, value_enum, default_value = "symbolic")]
    mode: Mode,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FockOperator {
    Symmetrizer,
    R,
    Annihilator,
    Gauge,
}

#[derive(Args, Debug)]
struct FockArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "symmetrizer")]
    operator: FockOperator,
    /// Vector for the annihilator, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Matrix for the gauge operator: `identity`, `zero`, or rows like `1,0;0,-1`.
    #[arg(long = "T", allow_hyphen_values = true)]
    t_matrix: Option<String>,
}

/// Per-factor data; a single value is used for every factor.
#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// Vectors x_i (comma separated), x_1 first; defaults to the first unit vector.
    #[arg(long, allow_hyphen_values = true)]
    x: Vec<String>,
    /// Matrices T_i; defaults to zero.
    #[arg(long = "T", allow_hyphen_values = true)]
    t_matrix: Vec<String>,
    /// Draw x, T and λ from a seeded generator instead.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Print both sides and the verdict as JSON.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    data: DataArgs,
    /// Constants λ_i; defaults to zero.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Vec<String>,
    /// Compute the vector B^ε Ω for a word over `*`, `1`, `'` instead of a moment.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
}

#[derive(Args, Debug)]
struct QtArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "t_symbolic")]
    t: Option<String>,
    /// Keep t as a variable (the default when --t is absent).
    #[arg(long)]
    t_symbolic: bool,
    #[arg(long, value_enum, default_value = "symbolic")]
    mode: Mode,
    #[command(flatten)]
    data: DataArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// (α,q)-Poisson polynomials of type B.
    AlphaQ,
    /// (q,t)-Poisson polynomials.
    Qt,
    /// Al-Salam–Ismail polynomials at (a, b, c) = (-1, t², 1).
    AlSalamIsmail,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OrthopolyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long = "N")]
    n_max: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` or one of wick, vector, corollary, fixtures, qt, fock, orthopoly, group.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest n for the chosen suites.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random instances per n in the Wick suite.
    #[arg(long, default_value_t = 20)]
    instances: usize,
    /// Report elapsed_ms as 0 so that output is byte-for-byte reproducible.
    #[arg(long)]
    no_timing: bool,
}

/// Outcome of a subcommand: text to emit and whether every check held.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Group(a) => commands::group(a),
        Command::Partitions(a) => commands::partitions(a),
        Command::Fock(a) => commands::fock(a),
        Command::Moment(a) => commands::moment(a),
        Command::Qt(a) => commands::qt(a),
        Command::Orthopoly(a) => commands::orthopoly(a),
        Command::Verify(a) => commands::verify(a),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                fockb::Error::ResourceLimit(_) | fockb::Error::Truncation(_) => EXIT_RESOURCE,
                _ => EXIT_BAD_INPUT,
            });
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(output.text.as_bytes())),
        None => io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_BAD_INPUT);
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED_CHECK)
    }
}
