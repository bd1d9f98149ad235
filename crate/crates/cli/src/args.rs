//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "mosaic", version, about = "Generate, verify and analyse explicit mosaics of combinatorial designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family member and write its header, certificate and member matrices.
    Gen(GenArgs),
    /// Re-check a generated mosaic directory, or a freshly built family member.
    Verify(VerifyArgs),
    /// Color rate, block rate and the block-rate optimality verdict.
    Rates(FamilyOnly),
    /// Exact security metrics against the closed-form bounds.
    Bounds(SecurityArgs),
    /// Numerical checks of the per-member identities and comparisons.
    Exact(ExactArgs),
    /// Collision spectrum, universality and orthogonal-array report.
    Hashprops(FamilyOnly),
    /// Monte Carlo wiretap or privacy-amplification run.
    Simulate(SecurityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    M1,
    M2,
    M3,
    M4,
}

#[derive(Clone, Debug, Serialize, Args)]
pub struct FamilyArgs {
    /// Family: m1 (hyperplanes), m2 (Denniston arcs), m3 (point multiples of m2), m4 (transversal designs).
    #[arg(long)]
    pub family: Option<FamilyArg>,
    /// Dimension for m1; field exponent 2^t for m2/m3.
    #[arg(long)]
    pub t: Option<u32>,
    /// Arc exponent for m2/m3, 1 ≤ l ≤ t.
    #[arg(long)]
    pub l: Option<u32>,
    /// Field order for m1 and m4.
    #[arg(long)]
    pub q: Option<usize>,
    /// Number of slope classes for m4, 2 ≤ k ≤ q + 1.
    #[arg(long)]
    pub k: Option<usize>,
    /// Multiplicity for m3.
    #[arg(long)]
    pub u: Option<usize>,
}

#[derive(Debug, Serialize, Args)]
pub struct FamilyOnly {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Output directory for mosaic.json and member_<α>.csv; JSON to standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Args)]
pub struct VerifyArgs {
    /// Directory written by `gen --out`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Args)]
pub struct SecurityArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Wiretap channel: identity | symmetric:P | constant[:q0,q1,...] | random[:OUTPUTS] | file:PATH.
    #[arg(long, default_value = "random")]
    pub channel: String,
    /// Privacy-amplification source: uniform[:OUTPUTS] | random[:OUTPUTS] | channel | file:PATH.
    /// `channel` sends a uniform X through --channel.
    #[arg(long, default_value = "random")]
    pub source: String,
    /// Analyse privacy amplification instead of the wiretap setting.
    #[arg(long)]
    pub pa: bool,
    /// Message distribution for the wiretap setting: uniform | point:ALPHA | custom:p0,p1,...
    #[arg(long, default_value = "uniform")]
    pub prior: String,
    /// Monte Carlo trials for `simulate`.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative slack for bound domination; significance level for simulate.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ExactCheck {
    /// Wiretap per-member identity.
    Prop41,
    /// Privacy-amplification per-member, per-z identity.
    Prop42,
    /// Divergence and entropy sandwich for the point-class partition.
    Sandwich,
}

#[derive(Debug, Serialize, Args)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub check: ExactCheck,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Channel spec as for `bounds`; `random` draws a fresh channel per trial.
    #[arg(long, default_value = "random")]
    pub channel: String,
    /// Source spec as for `bounds`; `random` draws a fresh source per trial.
    #[arg(long, default_value = "random")]
    pub source: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum allowed discrepancy.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
