//! `pcfz`: zeros of the parabolic cylinder function `U(a, z)`.

mod grid;
mod oracle;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcfz_core::Error;

#[derive(Parser)]
#[command(name = "pcfz", version, about = "Zeros of the parabolic cylinder function U(a, z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate zeros from the asymptotic expansions, optionally refined.
    Zeros(ZerosArgs),
    /// Compare expansion zeros against refined or oracle reference zeros.
    Validate(ValidateArgs),
    /// Write arg U(a, x + iy) on a rectangular grid.
    PhaseGrid(GridArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Auto,
    Apos,
    Pos,
    Nonpos,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    Refined,
    Oracle,
}

#[derive(Args, Clone, Debug)]
pub struct Selection {
    /// The parameter a of U(a, z).
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
    pub family: FamilyArg,
    /// Zeros per infinite family; caps the finite families when given.
    #[arg(long)]
    pub count: Option<usize>,
    /// Explicit indices, e.g. `--m 1,2,50`; overrides --count.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Option<Vec<i64>>,
    /// Expansion terms (1 to 3).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub terms: u8,
    /// Use the asymptotic zeros of the Airy combination instead of refined ones.
    #[arg(long)]
    pub raw_airy: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    sel: Selection,
    /// Polish each zero with the fixed-point iteration.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    refine: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    sel: Selection,
    /// Reference zeros: refined expansion zeros, or Hermite quadrature nodes.
    #[arg(long, value_enum, default_value_t = Reference::Refined)]
    reference: Reference,
    /// Refine the approximations before comparing (oracle reference only).
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    refine: bool,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    re_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    re_max: f64,
    #[arg(long, allow_hyphen_values = true)]
    im_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    im_max: f64,
    #[arg(long, default_value_t = 200)]
    nx: usize,
    #[arg(long, default_value_t = 200)]
    ny: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

/// Failure of a command, carrying the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Polynomial(String),
    Solver(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Polynomial(_) => 3,
            Failure::Solver(_) | Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Polynomial(m) | Failure::Solver(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::PolynomialCase(_) => Failure::Polynomial(msg),
            Error::InvalidArgument(_) | Error::Index { .. } | Error::Domain(_) => Failure::Usage(msg),
            _ => Failure::Solver(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    if jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Io(e.to_string()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PCFZ_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Zeros(args) => {
            thread_pool(args.sel.jobs).and_then(|pool| pool.install(|| run::zeros(&args.sel, args.refine)))
        }
        Command::Validate(args) => thread_pool(args.sel.jobs)
            .and_then(|pool| pool.install(|| run::validate(&args.sel, args.reference, args.refine))),
        Command::PhaseGrid(args) => thread_pool(args.jobs).and_then(|pool| {
            pool.install(|| {
                let spec = grid::GridSpec {
                    a: args.a,
                    re: (args.re_min, args.re_max),
                    im: (args.im_min, args.im_max),
                    nx: args.nx,
                    ny: args.ny,
                };
                grid::phase_grid(&spec, args.out.as_deref())
            })
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pcfz: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
