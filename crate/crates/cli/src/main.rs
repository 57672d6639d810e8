//! `gls`: command-line front end for generalized Latin squares.
//!
//! Exit codes: 0 success (found, certified), 1 not found / not certified /
//! infeasible, 2 usage or input error, 3 resource limit.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "gls", version, about = "Transversals in generalized Latin squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a square (.sq) or edge-colored graph (.ecg) and print statistics.
    Check {
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a transversal.
    Solve(SolveArgs),
    /// Evaluate sufficient conditions for a transversal.
    Certify(CertifyArgs),
    /// Split a square into n disjoint transversals.
    Decompose {
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute l(n), or l*(n) with --star, by exhaustive enumeration.
    LNumber(LNumberArgs),
    /// List one square per symmetry class.
    Enumerate(EnumerateArgs),
    /// Generate squares and colorings.
    Construct(ConstructArgs),
    /// Turn a properly colored K_m into a square of order m.
    Reduce(ReduceArgs),
    /// Search for a rainbow 1-factor or 2-factor.
    Rainbow(RainbowArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Exact,
    Constructive,
    MultSplit,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    First,
    Count,
    All,
}

#[derive(Args)]
struct SolveArgs {
    path: String,
    #[arg(long, value_enum, default_value = "exact")]
    method: SolveMethod,
    #[arg(long, value_enum, default_value = "first")]
    mode: SolveMode,
    /// Shuffle rows and columns with this seed before an exact search.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[group(multiple = false)]
struct CertifyKind {
    /// Local lemma pair condition (default).
    #[arg(long)]
    lll: bool,
    /// Symbol-count and multiplicity thresholds.
    #[arg(long)]
    thresholds: bool,
    /// Per-line singleton lower bounds.
    #[arg(long)]
    singletons: bool,
}

#[derive(Args)]
struct CertifyArgs {
    path: String,
    #[command(flatten)]
    kind: CertifyKind,
    /// Scan every monochromatic pair instead of the top two per symbol.
    #[arg(long)]
    full_scan: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Limits {
    /// Worker threads for enumeration.
    #[arg(long, env = "GLS_JOBS", default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    timeout_s: Option<f64>,
}

#[derive(Args)]
struct LNumberArgs {
    #[arg(long)]
    order: usize,
    /// Compute l*(n) (decomposability) instead of l(n).
    #[arg(long)]
    star: bool,
    /// Write the extremal witness to this file.
    #[arg(long)]
    witness: Option<String>,
    #[command(flatten)]
    limits: Limits,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    #[arg(long)]
    min_symbols: Option<usize>,
    #[arg(long)]
    max_symbols: Option<usize>,
    /// Keep only squares carrying a local lemma certificate.
    #[arg(long)]
    lll_certified: bool,
    /// Print only the summary.
    #[arg(long)]
    summary_only: bool,
    #[command(flatten)]
    limits: Limits,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    /// Cayley table of Z_n (--order).
    Cyclic,
    /// Random square (--order, --symbols, --seed).
    Random,
    /// Non-decomposable square from a transversal-free one (--input).
    LstarGap,
    /// Random proper coloring of K_m (--vertices, --colors, --seed).
    Coloring,
    /// Local search for transversal-free squares (--order, --iterations, --seed).
    TransversalFree,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    symbols: Option<usize>,
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long)]
    colors: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long)]
    input: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args)]
struct ReduceArgs {
    path: String,
    #[arg(long, short)]
    output: Option<String>,
    /// Also find a rainbow transversal and extract its degree-2 edge set.
    #[arg(long)]
    extract: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RainbowArgs {
    path: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    factor: u8,
    /// Vertices a 2-factor must cover; defaults to m - 1.
    #[arg(long)]
    min_vertices: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`gls enumerate ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { path, json } => commands::check(&path, json),
        Command::Solve(a) => commands::solve(&a),
        Command::Certify(a) => commands::certify(&a),
        Command::Decompose { path, json } => commands::decompose(&path, json),
        Command::LNumber(a) => commands::l_number(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Construct(a) => commands::construct(&a),
        Command::Reduce(a) => commands::reduce(&a),
        Command::Rainbow(a) => commands::rainbow(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
