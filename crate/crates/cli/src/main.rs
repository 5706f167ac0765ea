mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::CliError;

#[derive(Parser, Debug)]
#[command(name = "ecom", version, about = "Invariants of AfCom(G) and its coset posets for finite groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Human-oriented output (indented JSON, verdict lines for verify).
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = ecom_core::group::DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Largest number of simplices in any single dimension.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    pub max_simplices: usize,
    #[arg(long, global = true, default_value_t = ecom_core::pi1::DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Soft wall-clock limit in seconds, checked between phases.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Include phase timings in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, center, derived subgroup and abelian subgroup counts.
    GroupInfo { spec: String },
    /// Facets of AfCom(G) with statistics.
    Afcom {
        spec: String,
        /// Write the complex export here instead of embedding it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of a complex built from the group.
    Homology {
        spec: String,
        #[arg(long, value_enum, default_value_t = Variant::Afcom)]
        variant: Variant,
        /// Highest degree; defaults to the dimension of the complex.
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        reduced: bool,
        /// Betti numbers only, via modular ranks.
        #[arg(long)]
        betti_only: bool,
    },
    /// Presentation of the fundamental group of AfCom(G).
    Pi1 {
        spec: String,
        #[arg(long)]
        simplify: bool,
        /// Coset limit for enumeration; 0 skips it. Defaults to --max-cosets.
        #[arg(long)]
        tc_limit: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Seconds allowed for the extraspecial check before it is skipped.
        #[arg(long, default_value_t = 600)]
        budget: u64,
    },
    /// Opt-in long computations.
    Stretch {
        #[command(subcommand)]
        which: Stretch,
    },
}

#[derive(Subcommand, Debug)]
enum Stretch {
    /// Simplify and enumerate the fundamental group of AfCom(S5).
    S5 {
        #[arg(long)]
        tc_limit: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Afcom,
    Abco,
    Mabco,
    /// The covering of AfCom(G) given by the commutator map.
    Cover,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    Paper,
    Properties,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let g = &cli.global;
    match cli.command {
        Command::GroupInfo { spec } => commands::group_info(g, &spec),
        Command::Afcom { spec, out } => commands::afcom(g, &spec, out.as_deref()),
        Command::Homology { spec, variant, max_dim, reduced, betti_only } => {
            commands::homology(g, &spec, variant, max_dim, reduced, betti_only)
        }
        Command::Pi1 { spec, simplify, tc_limit } => commands::pi1(g, &spec, simplify, tc_limit),
        Command::Verify { suite, seed, budget } => commands::verify(g, &suite, seed, budget),
        Command::Stretch { which: Stretch::S5 { tc_limit } } => commands::stretch_s5(g, tc_limit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(report) = e.report() {
                println!("{report}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
