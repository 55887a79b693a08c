use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use qvlbi_core::rng::DEFAULT_SEED;

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (acceptance 1-11)");

#[derive(Debug, Parser)]
#[command(name = "qvlbi", version = VERSION, about = "Quantum-enabled optical VLBI calculators and protocol simulator")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Seed for every Monte Carlo lane.
    #[arg(long, global = true, env = "QVLBI_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output format; JSON unless the command emits a trajectory or table file.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// key=value file preloading flags; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn accept_negative(cmd: clap::Command) -> clap::Command {
    cmd.allow_negative_numbers(true).mut_subcommands(accept_negative)
}

/// The full command tree, with negative numbers accepted as flag values everywhere.
pub fn command() -> clap::Command {
    accept_negative(Cli::command())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// AB magnitude to photon rate and photons per coherence time.
    Photometry(PhotometryArgs),
    /// Two-mode covariance and weak-source density matrix.
    State(StateArgs),
    /// Quantum Fisher information and Cramér–Rao bounds.
    Qfi(QfiArgs),
    /// Run an entanglement-assisted readout protocol.
    Protocol(ProtocolArgs),
    /// Entanglement consumption rate and multiphoton contamination.
    Consumption(ConsumptionArgs),
    /// Baseline precision and phase-estimation Monte Carlo.
    Geodesy(GeodesyArgs),
    /// STIRAP population transfer trajectory.
    Stirap(StirapArgs),
    /// Cavity cooperativity, decay rate and coupling.
    Cavity(CavityArgs),
    /// Exoplanet angular separations.
    Targets(TargetsArgs),
    /// Relativistic orbital precession.
    Precession(PrecessionArgs),
    /// Regenerate reference tables and curves with tolerance verdicts.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct PhotometryArgs {
    /// Regenerate a reference table instead of a single evaluation.
    #[arg(long, value_enum)]
    pub table: Option<PhotometryTable>,
    #[arg(long, default_value_t = 9.0, allow_hyphen_values = true)]
    pub m_ab: f64,
    #[arg(long, default_value_t = 760.0)]
    pub lambda_nm: f64,
    #[arg(long, conflicts_with = "delta_nu_hz")]
    pub delta_lambda_nm: Option<f64>,
    #[arg(long)]
    pub delta_nu_hz: Option<f64>,
    /// Collecting area, m².
    #[arg(long, default_value_t = 10.0)]
    pub area: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PhotometryTable {
    Appendix,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(long, default_value_t = 1e-7)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Accept ε above the weak-source limit.
    #[arg(long)]
    pub allow_strong: bool,
}

#[derive(Debug, Args)]
pub struct QfiArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Number of copies for the Cramér–Rao bounds.
    #[arg(long, default_value_t = 1)]
    pub copies: u64,
    /// Reference phase for the local-measurement Fisher information.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Compare analytic and numerical information over the reference grid.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolKind {
    Gottesman,
    Unary,
    BinarySearch,
    Binary,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    #[arg(value_enum)]
    pub kind: ProtocolKind,
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1024)]
    pub bins: usize,
    #[arg(long, default_value_t = 1)]
    pub shots: usize,
    /// Place one shared photon in this 1-based bin instead of sampling.
    #[arg(long)]
    pub photon_bin: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// Ground-photon reference phase.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct ConsumptionArgs {
    /// Regenerate the consumption-rate table.
    #[arg(long)]
    pub table: bool,
    #[arg(long, default_value_t = 10e9)]
    pub delta_nu_hz: f64,
    #[arg(long, default_value_t = 7e-7)]
    pub epsilon: f64,
    /// Multiplexing overhead against multiphoton events.
    #[arg(long, default_value_t = 1.0)]
    pub overhead: f64,
    /// Block length for the multiphoton fidelity and memory size.
    #[arg(long)]
    pub bins: Option<u64>,
    /// Frequency bands for broadband memory sizing.
    #[arg(long, default_value_t = 1)]
    pub bands: u64,
}

#[derive(Debug, Args)]
pub struct GeodesyArgs {
    #[command(subcommand)]
    pub mode: GeodesyMode,
}

#[derive(Debug, Subcommand)]
pub enum GeodesyMode {
    /// Cramér–Rao baseline precision.
    Crb(GeodesyCrbArgs),
    /// Maximum-likelihood phase estimation Monte Carlo.
    Mc(GeodesyMcArgs),
}

#[derive(Debug, Args)]
pub struct GeodesyCrbArgs {
    #[arg(long, default_value_t = 1550.0)]
    pub lambda_nm: f64,
    #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
    pub theta_deg: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub photons: u64,
    /// Single-photon phase uncertainty, rad.
    #[arg(long, default_value_t = 1.0)]
    pub delta_phi: f64,
    /// Baseline length for reporting the fringe phase, m.
    #[arg(long)]
    pub baseline_m: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GeodesyMcArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 10_000)]
    pub photons: u64,
    #[arg(long, default_value_t = 200)]
    pub shots: usize,
    /// Reference phases, rad.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, std::f64::consts::FRAC_PI_2], allow_hyphen_values = true)]
    pub deltas: Vec<f64>,
    /// Include every per-shot estimate.
    #[arg(long)]
    pub estimates: bool,
}

#[derive(Debug, Args)]
pub struct StirapArgs {
    #[arg(long)]
    pub decay: bool,
    /// Use the detuning G² + Ω² without rescaling by g.
    #[arg(long)]
    pub raw_detuning: bool,
    #[arg(long, default_value_t = 100_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 100)]
    pub record_every: usize,
    /// Emit the summary as JSON instead of the trajectory.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Args)]
pub struct CavityArgs {
    #[arg(long, default_value_t = 780.0)]
    pub lambda_nm: f64,
    #[arg(long, default_value_t = 2e5)]
    pub finesse: f64,
    #[arg(long, default_value_t = 2.0)]
    pub waist_um: f64,
    #[arg(long, default_value_t = 40.0)]
    pub length_um: f64,
    /// Atomic linewidth γ/2π, MHz.
    #[arg(long, default_value_t = 6.0)]
    pub gamma_mhz: f64,
    /// Transfer duration in units of 1/g for the decay estimate.
    #[arg(long, default_value_t = 50.0)]
    pub transfer_time: f64,
}

#[derive(Debug, Args)]
pub struct TargetsArgs {
    #[arg(long, value_enum)]
    pub table: Option<TargetsTable>,
    #[arg(long, requires = "d_pc")]
    pub a_au: Option<f64>,
    #[arg(long, requires = "a_au")]
    pub d_pc: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TargetsTable {
    Exoplanets,
}

#[derive(Debug, Args)]
pub struct PrecessionArgs {
    #[arg(long, value_enum, default_value_t = Preset::S2)]
    pub preset: Preset,
    /// Central mass in solar masses; overrides the preset.
    #[arg(long)]
    pub mass_msun: Option<f64>,
    #[arg(long)]
    pub a_au: Option<f64>,
    #[arg(long)]
    pub eccentricity: Option<f64>,
    #[arg(long)]
    pub spin: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    S2,
    Mercury,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["all", "table"]))]
pub struct ReproduceArgs {
    /// Write every artifact and a manifest into the output directory.
    #[arg(long)]
    pub all: bool,
    /// Emit one artifact as CSV on standard output.
    #[arg(long, value_enum)]
    pub table: Option<Artifact>,
    /// Directory receiving the artifact files and manifest.
    #[arg(long, default_value = "reproduce")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Artifact {
    Exoplanets,
    Consumption,
    Appendix,
    CFactor,
    Stirap,
}
