mod geometry;
mod manifest;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::{Manifest, Sink};

/// Monotone and coherent path spectra of polytopes, and random polygons from
/// projected sphere samples.
#[derive(Parser)]
#[command(name = "monopaths", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Arithmetic backend. Defaults to rational, except for fixtures that
    /// only exist in floating point.
    #[arg(long, value_enum, global = true)]
    pub backend: Option<BackendArg>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count c-monotone paths by length.
    Count(geometry::CountArgs),
    /// Count coherent paths by length, with certificates.
    Coherent(geometry::CoherentArgs),
    /// List or emit built-in fixtures.
    #[command(subcommand)]
    Zoo(geometry::ZooCommand),
    /// Recompute fixture spectra and compare with the expected tables.
    Verify(geometry::VerifyArgs),
    /// Hull statistics of random polygons.
    Simulate(simulate::SimulateArgs),
    /// Growth exponent of the mean vertex count.
    Growth(simulate::GrowthArgs),
    /// First-order difference moments and the Efron-Stein proxy.
    Diffmoment(simulate::DiffArgs),
    /// Kolmogorov distance of the standardized upper-chain length to N(0,1).
    Cltcheck(simulate::CltArgs),
    /// How often the floating body escapes the random polygon.
    Floatbody(simulate::FloatArgs),
}

/// Failure classes, one per exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Degenerate(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Degenerate(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Degenerate(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<monopaths::Error> for Failure {
    fn from(e: monopaths::Error) -> Failure {
        use monopaths::Error;
        match e {
            Error::Input(_) => Failure::Input(e.to_string()),
            Error::Genericity(..) | Error::Degeneracy(_) | Error::Indeterminate(_) => Failure::Degenerate(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sink = Sink { manifest: Manifest::new(cli.global.seed), format: cli.global.format, out: cli.global.out.clone() };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Count(a) => geometry::count(a, g, sink),
        Command::Coherent(a) => geometry::coherent(a, g, sink),
        Command::Zoo(a) => geometry::zoo(a, g, sink),
        Command::Verify(a) => geometry::verify(a, g, sink),
        Command::Simulate(a) => simulate::simulate(a, g, sink),
        Command::Growth(a) => simulate::growth(a, g, sink),
        Command::Diffmoment(a) => simulate::diffmoment(a, g, sink),
        Command::Cltcheck(a) => simulate::cltcheck(a, g, sink),
        Command::Floatbody(a) => simulate::floatbody(a, g, sink),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
