mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use projcert::contraction::{DEFAULT_SAMPLES, DEFAULT_SEED};

use output::Format;

/// Exit status for errors: malformed input, invalid arguments, failed I/O.
pub const EXIT_ERROR: u8 = 3;

/// Certify ε-contracting projective transformations over ℝ, ℂ and ℚ_p,
/// reduce dense generating sets of tori, and check Lie algebra generation.
///
/// Exit codes: 0 affirmative, 1 negative verdict, 2 inconclusive, 3 error.
#[derive(Parser, Debug)]
#[command(name = "projcert", version, about, long_about)]
pub struct Cli {
    /// Output format; csv is available for epsilon sweeps and `bound --examples`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan decomposition g = k·a·k' and the singular profile.
    Cartan(MatrixArgs),
    /// Contraction certificates.
    #[command(subcommand)]
    Contract(ContractCommand),
    /// Dense subgroups of tori.
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Generation of Lie algebras over ℚ.
    #[command(subcommand)]
    Liealg(LieCommand),
    /// Generator count bound dim(G/G₂) + d₁ + t versus dim G + d₁.
    Bound(BoundArgs),
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Matrix file (JSON or whitespace grid); `-` reads stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// real, complex, padic:p or padic:p:N.
    #[arg(long)]
    pub field: Option<String>,
    /// p-adic digits kept (default from PROJCERT_PADIC_PRECISION, else 16).
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct ContractArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// One value, or a comma-separated list for a sweep.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub epsilon: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Sampling seed; decimal or 0x-prefixed hex.
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
    /// JSON file `{"hyperplane": [...], "point": [...]}` replacing the
    /// canonical pair (oracle and proofchain).
    #[arg(long)]
    pub pair: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct EpsilonStarArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum ContractCommand {
    /// Decide from the singular ratio r = |a₂/a₁| alone.
    Certify(ContractArgs),
    /// Check the contraction inequality directly (sampled over ℝ/ℂ, exhaustive over ℚ_p).
    Oracle(ContractArgs),
    /// Replay the chain of inequalities behind the converse bound r ≤ 4ε².
    Proofchain(ContractArgs),
    /// Smallest ε: closed form √(r/(1+r)) against bisection over the oracle.
    EpsilonStar(EpsilonStarArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TorusArgs {
    /// Generators JSON; `-` reads stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// ℚ-independent basis such as `1,sqrt2,sqrt3` or `1,pi,x=0.123`.
    #[arg(long)]
    pub basis: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub torus: TorusArgs,
    /// Enumerate words of ℓ¹ length at most this.
    #[arg(long, default_value_t = 200)]
    pub word_length: u64,
    /// Cell side of the mesh on [0,1)^d.
    #[arg(long, default_value_t = 0.1)]
    pub mesh: f64,
}

#[derive(Subcommand, Debug)]
pub enum TorusCommand {
    /// Closure of the generated subgroup: dimension, components, character lattice.
    Closure(TorusArgs),
    /// Exit 0 if the generators are dense, 1 otherwise.
    Dense(TorusArgs),
    /// At most d words in the inputs that still generate a dense subgroup.
    Reduce(TorusArgs),
    /// Floating-point mesh coverage of short words.
    Probe(ProbeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Direct sum such as `sl2+R3` (summands sl2, so3, su2, heis3, aff, R, Rm)
    /// or a JSON file of structure constants.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug, Clone)]
pub struct GeneratesArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// JSON file with an array of elements; `-` reads stdin.
    #[arg(long)]
    pub elements: Option<String>,
    /// An element such as `e + z1`; repeatable.
    #[arg(long = "element", short = 'e', allow_hyphen_values = true)]
    pub element: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MingenArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Random tuples tried per size.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum LieCommand {
    /// Exit 0 if the elements generate the algebra, 1 otherwise.
    Generates(GeneratesArgs),
    /// Lower and upper bounds on the minimal number of generators.
    Mingen(MingenArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    /// dim G.
    #[arg(long, required_unless_present = "examples")]
    pub dim: Option<usize>,
    /// Dimension of the largest Euclidean quotient.
    #[arg(long, required_unless_present = "examples")]
    pub d1: Option<usize>,
    /// dim(G/G₂).
    #[arg(long, required_unless_present = "examples")]
    pub meta: Option<usize>,
    /// Generators needed for the Lie algebra of the perfect part.
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    /// Print the table of non-abelian examples instead.
    #[arg(long, conflicts_with_all = ["dim", "d1", "meta"])]
    pub examples: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
    .map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            output::report_usage_error(&e.render().to_string());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let format = cli.format;
    match commands::dispatch(cli.command).and_then(|o| output::emit(&o, format).map(|_| o.exit)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            output::report_error(&e, format);
            ExitCode::from(EXIT_ERROR)
        }
    }
}
