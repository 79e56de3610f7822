//! Deterministic command-line surface over the octarank library.
//!
//! Exit codes: 0 all checks pass; 1 a mathematical check failed (witness
//! in the report); 2 I/O, format or usage error; 3 infeasible system or
//! search budget exhausted.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octarank::completion::GramForm;
use octarank::Error;

#[derive(Parser)]
#[command(
    name = "octarank",
    version,
    about = "Exact verification and search for octahedron-indexed GF(2) matrices on join powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Check the four defining properties of a matrix file.
    Check {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Also run the strong (localized) non-triviality scan.
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Rank of a matrix file, with the rank-bound verdict when it is an
    /// (n,k)-matrix.
    Rank {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Apply the heredity reduction and write the (n,k−1) result.
    Heredity {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// k = 1 pipeline commands.
    #[command(subcommand)]
    K1(K1Command),
    /// Constraint-space workflows.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Build a seeded random Gram-form matrix and report its rank.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate every closed-form bound at (n, k).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        beta: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Pair-product identity, coboundary sizes, and the XOR-decomposition
    /// census at the default parameter grid.
    Combinatorial {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Intersection-parity counting, optionally cross-checked by the
    /// exact geometric oracle.
    Vankampen {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        geometric: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact-integer inequality scans and bound consistency.
    Bounds {
        #[arg(long, default_value_t = 5)]
        k: u64,
        #[arg(long, default_value_t = 200)]
        n: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum K1Command {
    /// Run the full k = 1 rank-certification chain on a matrix file.
    Certify {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Assemble the constraint system, optionally writing NKSYS.
    Build(SpaceBuildArgs),
    /// Solve the system and draw seeded samples.
    Sample(SpaceSampleArgs),
    /// Search the solution coset for a minimum-rank member.
    Minrank(SpaceMinrankArgs),
}

#[derive(Args)]
struct SpaceBuildArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SpaceSampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SpaceMinrankArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10000)]
    budget: u64,
    #[arg(long, default_value_t = 20)]
    threshold: u32,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Identity,
    Hyperbolic,
}

impl From<FormArg> for GramForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Identity => GramForm::Identity,
            FormArg::Hyperbolic => GramForm::Hyperbolic,
        }
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) | Error::Budget(_) => 3,
        Error::Precondition(_) | Error::Structure(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> octarank::Result<(report::Report, Option<PathBuf>)> {
    match cli.command {
        Command::Verify(VerifyCommand::Combinatorial { k, json }) => {
            Ok((commands::verify_combinatorial(k)?, json))
        }
        Command::Verify(VerifyCommand::Vankampen { k, geometric, json }) => {
            Ok((commands::verify_vankampen(k, geometric)?, json))
        }
        Command::Verify(VerifyCommand::Bounds { k, n, json }) => {
            Ok((commands::verify_bounds(k, n)?, json))
        }
        Command::Check {
            file,
            n,
            k,
            strong,
            json,
        } => Ok((commands::check_file(&file, n, k, strong)?, json)),
        Command::Rank { file, n, k, json } => Ok((commands::rank_file(&file, n, k)?, json)),
        Command::Heredity {
            file,
            out,
            n,
            k,
            json,
        } => Ok((commands::heredity_file(&file, &out, n, k)?, json)),
        Command::K1(K1Command::Certify { file, n, k, json }) => {
            Ok((commands::k1_certify(&file, n, k)?, json))
        }
        Command::Space(SpaceCommand::Build(args)) => Ok((
            commands::space_build(args.n, args.k, args.out.as_deref())?,
            args.json,
        )),
        Command::Space(SpaceCommand::Sample(args)) => Ok((
            commands::space_sample(args.n, args.k, args.seed, args.count, args.out.as_deref())?,
            args.json,
        )),
        Command::Space(SpaceCommand::Minrank(args)) => Ok((
            commands::space_minrank(
                args.n,
                args.k,
                args.seed,
                args.budget,
                args.threshold,
                args.out.as_deref(),
            )?,
            args.json,
        )),
        Command::Gram {
            n,
            k,
            beta,
            form,
            seed,
            out,
            json,
        } => Ok((
            commands::gram_command(n, k, beta, form.into(), seed, out.as_deref())?,
            json,
        )),
        Command::Bounds { n, k, beta, json } => Ok((commands::bounds_command(n, k, beta)?, json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json)) => {
            if let Err(e) = commands::emit(&report, json.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}
