use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

/// Bounds, oracle checks and plots for the two-state-discrimination
/// contextuality witness W = (p_suc − p_err)/2.
#[derive(Debug, Parser)]
#[command(name = "sdwitness", version, args_override_self = true)]
#[command(
    after_help = "Any command accepts --config PATH: a key=value file with the same names as the flags. \
Flags on the command line override the file.\n\nExit codes: 0 ok, 1 verification discrepancy, 2 usage, 3 I/O."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum and noncontextual optima, W* and the contextual gap at one point.
    Bounds(BoundsArgs),
    /// Compare the closed forms with the brute-force oracles over a grid.
    Verify(VerifyArgs),
    /// Boundary of a feasible region in the (p_err, p_suc) plane.
    Region(RegionArgs),
    /// Minimal noise parameter r_min(p_inc) at which the quantum optimum beats W*.
    Tolerance(ToleranceArgs),
    /// Decide whether observed statistics witness contextuality.
    Test(TestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionModel {
    Quantum,
    Noncontextual,
    Deterministic,
    /// Overlay of all three (SVG only).
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyModel {
    Quantum,
    Noncontextual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BoundForm {
    /// Noncontextual value on both branches.
    #[default]
    Piecewise,
    /// The single low-branch expression at every p_inc.
    LowBranch,
}

fn unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn prob(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not a nonnegative number"))
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct BoundsArgs {
    /// Overlap |⟨ψ0|ψ1⟩|.
    #[arg(long, value_parser = unit)]
    pub delta: f64,
    /// Depolarising parameter.
    #[arg(long = "rs", value_parser = unit, default_value_t = 1.0)]
    pub r_s: f64,
    /// Inconclusive rate.
    #[arg(long = "pinc", value_parser = unit, default_value_t = 0.0)]
    pub p_inc: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyModel::Both)]
    pub model: VerifyModel,
    /// Overlaps for the quantum check (comma separated).
    #[arg(long, value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub deltas: Option<Vec<f64>>,
    /// Noise parameters for the quantum check.
    #[arg(long = "rs", value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub r_s: Option<Vec<f64>>,
    /// Inconclusive rates for the quantum check.
    #[arg(long = "pincs", value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub p_incs: Option<Vec<f64>>,
    /// Confusabilities for the noncontextual check.
    #[arg(long, value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub cs: Option<Vec<f64>>,
    /// Noise parameters for the noncontextual check.
    #[arg(long = "nc-rs", value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub nc_r_s: Option<Vec<f64>>,
    /// Inconclusive rates for the noncontextual check.
    #[arg(long = "nc-pincs", value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub nc_p_incs: Option<Vec<f64>>,
    /// Sweep resolution: GRID angles × GRID magnitudes.
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,
    /// Recorded in the report; drives the full-sphere spot checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random full-sphere inconclusive elements tried per quantum point.
    #[arg(long, default_value_t = 0)]
    pub spot_checks: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RegionArgs {
    #[arg(long, value_enum, default_value_t = RegionModel::Quantum)]
    pub model: RegionModel,
    /// Overlap (quantum model); also sets c = δ² unless --c is given.
    #[arg(long, value_parser = unit)]
    pub delta: Option<f64>,
    /// Confusability (noncontextual model).
    #[arg(long, value_parser = unit)]
    pub c: Option<f64>,
    #[arg(long = "rs", value_parser = unit, default_value_t = 1.0)]
    pub r_s: f64,
    /// Uniform p_inc samples per branch (branch points are always added).
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(3..))]
    pub points: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct ToleranceArgs {
    /// Overlaps (comma separated).
    #[arg(long, value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..,
          default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub deltas: Vec<f64>,
    /// Explicit, strictly increasing p_inc grid.
    #[arg(long = "pincs", value_parser = unit, value_delimiter = ',', action = ArgAction::Set, num_args = 1..)]
    pub p_incs: Option<Vec<f64>>,
    /// Otherwise: this many uniform samples of [0, 1].
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    #[arg(long = "w-star-form", value_enum, default_value_t = BoundForm::Piecewise)]
    pub form: BoundForm,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, clap::Args)]
pub struct TestArgs {
    #[arg(long = "psuc", value_parser = prob)]
    pub p_suc: f64,
    #[arg(long = "perr", value_parser = prob)]
    pub p_err: f64,
    #[arg(long = "pinc", value_parser = prob, default_value_t = 0.0)]
    pub p_inc: f64,
    /// Lower bound on the overlap of the prepared states.
    #[arg(long = "delta-bound", value_parser = unit)]
    pub delta_bound: f64,
    /// Rescale statistics whose sum is off by more than 1e-9 instead of rejecting them.
    #[arg(long)]
    pub renormalize: bool,
    #[arg(long = "w-star-form", value_enum, default_value_t = BoundForm::Piecewise)]
    pub form: BoundForm,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}
