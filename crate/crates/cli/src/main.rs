mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Certify compactness conditions on finite metric spaces and sampled function families.
#[derive(Debug, Parser)]
#[command(name = "lipcert", version)]
pub struct Cli {
    /// Target tolerance for check and synthesize.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Seed for every random instance.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Slack in the final `achieved <= eps + tol` verdict.
    #[arg(long, global = true, default_value_t = lipcert::TOL)]
    pub tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a space, comparison function, family or cover document.
    Validate(ValidateArgs),
    /// Check one condition against a supplied cover or witness.
    Check(CheckArgs),
    /// Build a cover or witness from the constructive arguments and re-check it.
    Synthesize(SynthArgs),
    /// Exhaustive ground truth for small instances.
    Oracle(OracleArgs),
    /// Build a named example and verify its claims.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub file: PathBuf,
    /// Space or family to validate a cover against.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Largest distance sampled when validating a lone comparison function.
    #[arg(long, default_value_t = 1.0)]
    pub d_max: f64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// equinormed | B | DS | equicontinuity | L | LDS | lambda | flatness
    pub condition: String,
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long)]
    pub cover: Option<PathBuf>,
    /// Localized witness document.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Comparison function document; defaults to the family's own.
    #[arg(long)]
    pub phi: Option<PathBuf>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    /// Check on the difference family `A − A`.
    #[arg(long)]
    pub difference: bool,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// b | ds | ds-from-equicontinuity | equicontinuity | tilde | lambda-from-l |
    /// l-from-lambda | lambda-from-flatness | flatness-from-net | equinorm
    pub kind: String,
    #[arg(long, conflicts_with = "random")]
    pub family: Option<PathBuf>,
    /// Use the random instance drawn from `--seed`.
    #[arg(long)]
    pub random: bool,
    #[arg(long)]
    pub phi: Option<PathBuf>,
    #[arg(long)]
    pub cover: Option<PathBuf>,
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    /// Member indices forming a net.
    #[arg(long, value_delimiter = ',')]
    pub net: Option<Vec<usize>>,
    /// Also write the synthesized cover or witness as its own document.
    #[arg(long)]
    pub cover_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// covering | min-oscillation | pigeonhole
    pub what: String,
    /// Space or family document.
    #[arg(long)]
    pub input: PathBuf,
    /// B | DS | L | LDS
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub points: Option<Vec<usize>>,
    /// Pairs as `a-b`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Option<Vec<String>>,
    #[arg(long)]
    pub cover: Option<PathBuf>,
    #[arg(long)]
    pub phi: Option<PathBuf>,
    #[arg(long)]
    pub difference: bool,
    /// Radii for the covering profile.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    /// riesz | sphere | tent | ball_cover | zminus | linfty
    pub name: String,
    /// Parameters as `key=value`.
    pub params: Vec<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, argv) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
