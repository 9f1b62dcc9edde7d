//! The `gallager` command line.
//!
//! Curves and spectra are written as CSV whose `#` header lines echo the
//! command and the sha256 of every model file; reports are JSON carrying the
//! same echo. Numbers are printed with 12 significant digits. `--units bits`
//! reads rates and thresholds in bits and divides displayed information
//! quantities by `ln 2`; computation is always in nats.
//!
//! Exit codes: 0 success, 1 invalid input or model, 2 enumeration budget
//! exceeded, 3 a verified bound failed, 64 usage error.

mod commands;
mod output;

pub use output::{round12, sig12, Units};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_BOUND_VIOLATED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "gallager", version, about = "Finite-blocklength Gallager exponents and information spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// E0(ρ) over a ρ grid for an input and channel.
    E0Curve(CurveArgs),
    /// J0(ρ) over a ρ grid for a correlated source pair.
    J0Curve(CurveArgs),
    /// Optimized exponent E(R) or J(R) at each rate.
    Exponent(ExponentArgs),
    /// Exact or Monte Carlo distribution of the information or entropy density.
    Spectrum(SpectrumArgs),
    /// Checks the channel bound over a threshold grid.
    VerifyT1(VerifyArgs),
    /// Checks the source bound over a threshold grid.
    VerifyT2(VerifyArgs),
    /// Tilted-law conditional entropy and the slope of J0 over a ρ grid.
    Tilted(TiltedArgs),
    /// Random channel codes under ML decoding.
    SimChannel(SimChannelArgs),
    /// Random binning of a correlated source under MAP decoding.
    SimSw(SimSwArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Model file. A channel alone gets a uniform i.i.d. input; pass a source
    /// and a channel to choose the input, or a joint file for source commands.
    #[arg(long = "model", required = true)]
    pub models: Vec<PathBuf>,
    /// Blocklength.
    #[arg(long)]
    pub n: usize,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Units::Nats)]
    pub units: Units,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated ρ values in [0, 1], increasing.
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<f64>,
    /// Uniform ρ grid size, used when --rho is absent.
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ExponentArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated rates, increasing.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rate: Vec<f64>,
    /// ρ grid size before golden-section refinement.
    #[arg(long, default_value_t = crate::exponents::DEFAULT_RHO_GRID)]
    pub grid: usize,
    /// Also maximize over i.i.d. inputs (memoryless channels only).
    #[arg(long)]
    pub optimize_input: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    /// Monte Carlo sample count; exact enumeration when absent.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Thresholds at which to report the tail probability in the header.
    #[arg(long, value_delimiter = ',')]
    pub threshold: Vec<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated thresholds.
    #[arg(long, value_delimiter = ',')]
    pub threshold: Vec<f64>,
    /// Number of evenly spaced interior thresholds when --threshold is absent.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct TiltedArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<f64>,
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    /// Also solve dJ0/dρ = rate for ρ.
    #[arg(long)]
    pub rate: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct SimChannelArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub rate: f64,
    #[arg(long, default_value_t = 100)]
    pub codebooks: u64,
    #[arg(long, default_value_t = 500)]
    pub transmissions: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SimSwArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub rate: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub bin_seed: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::E0Curve(a) | Command::J0Curve(a) => &a.common,
            Command::Exponent(a) => &a.common,
            Command::Spectrum(a) => &a.common,
            Command::VerifyT1(a) | Command::VerifyT2(a) => &a.common,
            Command::Tilted(a) => &a.common,
            Command::SimChannel(a) => &a.common,
            Command::SimSw(a) => &a.common,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
///
/// Output goes to `--out` when given and to `stdout` otherwise; diagnostics go
/// to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let common = cli.command.common().clone();
    let outcome = crate::parallel::with_workers(common.workers, || commands::execute(&cli.command, &echo))
        .and_then(|r| r);
    match outcome {
        Ok(done) => {
            let written = match &common.out {
                Some(path) => std::fs::write(path, &done.text).map_err(Error::from),
                None => stdout.write_all(done.text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => done.exit,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
