//! `bnkit` command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use bnkit::limits::STATE_ARITY_CEILING;
use bnkit::{BnError, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "bnkit",
    version,
    about = "Boolean network dynamics, trap spaces, reduction and control"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest state space to enumerate (rounded down to a power of two).
    #[arg(long, global = true, value_name = "COUNT")]
    pub max_states: Option<u64>,
}

impl Global {
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(count) = self.max_states {
            let arity = if count == 0 {
                0
            } else {
                63 - count.leading_zeros() as usize
            };
            limits.max_state_arity = arity.min(STATE_ARITY_CEILING);
        }
        limits
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Components, rules and the signed interaction graph.
    Info { input: PathBuf },
    /// Attractors of one update mode.
    Attractors {
        input: PathBuf,
        /// sync, async or general.
        #[arg(long, default_value = "async")]
        mode: String,
    },
    /// Trap spaces in canonical order.
    Trapspaces {
        input: PathBuf,
        #[arg(long)]
        minimal: bool,
    },
    /// Iterated value propagation from a seed subspace.
    Percolate {
        input: PathBuf,
        /// Seed subspace such as `0**`; defaults to the full space.
        #[arg(long)]
        seed_space: Option<String>,
    },
    /// Eliminates one component.
    Reduce {
        input: PathBuf,
        /// Component name or 1-based position.
        #[arg(long)]
        eliminate: String,
        #[arg(long)]
        check_mediator: bool,
        /// Reports whether minimal trap spaces are strictly preserved.
        #[arg(long)]
        check_mts: bool,
    },
    /// Checks or searches control strategies for a phenotype.
    Control {
        input: PathBuf,
        #[arg(long)]
        phenotype: String,
        /// sd, ad, gd, mts or vp.
        #[arg(long)]
        criterion: String,
        #[arg(long)]
        max_fixed: Option<usize>,
        /// Drops strategies that extend another reported one.
        #[arg(long)]
        minimal: bool,
        /// Checks this strategy instead of searching; exit status 1 when it fails.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Runs the built-in corpus of worked examples.
    VerifyPaper,
    /// Randomized counterexample search for one property.
    Search {
        /// Cell id such as `AD-forward-general` or a theorem id such as `thm-min-ts`.
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Failure of a command, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Analysis(BnError),
}

impl From<BnError> for Failure {
    fn from(e: BnError) -> Self {
        Failure::Analysis(e)
    }
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Analysis(e) if e.is_capacity() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Analysis(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: Cli) -> Result<commands::Output, Failure> {
    let g = cli.global;
    match cli.command {
        Command::Info { input } => commands::info(&g, &input),
        Command::Attractors { input, mode } => commands::attractors(&g, &input, &mode),
        Command::Trapspaces { input, minimal } => commands::trapspaces(&g, &input, minimal),
        Command::Percolate { input, seed_space } => commands::percolate(&g, &input, seed_space.as_deref()),
        Command::Reduce {
            input,
            eliminate,
            check_mediator,
            check_mts,
        } => commands::reduce(&g, &input, &eliminate, check_mediator, check_mts),
        Command::Control {
            input,
            phenotype,
            criterion,
            max_fixed,
            minimal,
            strategy,
        } => commands::control(
            &g,
            &input,
            commands::ControlArgs {
                phenotype: &phenotype,
                criterion: &criterion,
                max_fixed,
                minimal,
                strategy: strategy.as_deref(),
            },
        ),
        Command::VerifyPaper => commands::verify_paper(&g),
        Command::Search {
            property,
            arity,
            samples,
            seed,
            jobs,
        } => commands::search(&g, &property, arity, samples, seed, jobs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
