//! Argument surface of the `wteleport` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use wteleport::protocols::Protocol;

#[derive(Debug, Parser)]
#[command(
    name = "wteleport",
    about = "Simulate single-qubit teleportation over three-qubit W-class resource states",
    disable_version_flag = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a teleportation protocol on a resource state, exactly or by
    /// sampling.
    Teleport(TeleportArgs),
    /// Check the teleportability conditions for a resource state.
    Check(StateArgs),
    /// Compute entanglement quantities for a three-qubit state.
    Entangle(EntangleArgs),
    /// Tabulate a one-parameter resource family over a grid.
    Sweep(SweepArgs),
    /// Print the program version and record layout version.
    Version,
}

#[derive(Debug, Parser)]
pub struct TeleportArgs {
    /// Protocol to run.
    #[arg(long, value_enum)]
    pub protocol: ProtocolArg,

    /// Resource family shorthand, e.g. "n=1", "m=99", "nmr-ap:beta=0.5",
    /// "nmr-proposed:beta=0.1".
    #[arg(long, conflicts_with = "state")]
    pub family: Option<String>,

    /// Resource state description as JSON, e.g. '{"lambda":[0.5,0.70710678,0.5]}'.
    #[arg(long)]
    pub state: Option<String>,

    /// Input qubit: "haar" for a seeded random input, or two amplitudes
    /// "a,b" (each a real number, a "re+imi" string, or a two-number pair).
    #[arg(long, default_value = "haar")]
    pub input: String,

    /// Number of sampled trials; 0 runs the exact branch analysis instead.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,

    /// Seed for input sampling and outcome sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Tolerance for the condition check attached to the run.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Exit with code 2 when the protocol's condition is violated.
    #[arg(long)]
    pub strict: bool,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
pub struct StateArgs {
    /// Resource family shorthand, e.g. "n=1" or "m=99".
    #[arg(long, conflicts_with = "state")]
    pub family: Option<String>,

    /// Resource state description as JSON.
    #[arg(long)]
    pub state: Option<String>,

    /// Tolerance for condition residual classification.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
pub struct EntangleArgs {
    /// Resource family shorthand, e.g. "n=1" or "m=99".
    #[arg(long, conflicts_with = "state")]
    pub family: Option<String>,

    /// State description as JSON; accepts {"lambda":...}, {"family":...},
    /// and arbitrary states as {"amplitudes":[8 entries]}.
    #[arg(long)]
    pub state: Option<String>,

    /// Tolerance used when validating the description.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
pub struct SweepArgs {
    /// Family to sweep: "ap" (parameter n), "proposed" (parameter m),
    /// "nmr-ap" or "nmr-proposed" (parameter beta).
    #[arg(long)]
    pub family: String,

    /// First grid value.
    #[arg(long)]
    pub start: f64,

    /// Last grid value.
    #[arg(long)]
    pub stop: f64,

    /// Number of grid points; must be at least 1.
    #[arg(long)]
    pub steps: usize,

    /// Tolerance for the condition checks in each row.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Write the table to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Ap,
    Proposed,
}

impl From<ProtocolArg> for Protocol {
    fn from(arg: ProtocolArg) -> Self {
        match arg {
            ProtocolArg::Ap => Protocol::Ap,
            ProtocolArg::Proposed => Protocol::Proposed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}
