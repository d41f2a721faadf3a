use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wkb-spectra", version, about = "Semiclassical bound-state spectra for central potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels over a grid of (n_r, l)
    Spectrum(SpectrumArgs),
    /// Quantized angular momentum and polar phase integral
    Angular(AngularArgs),
    /// Radial wavefunction samples inside the allowed region
    Wavefunction(WavefunctionArgs),
    /// Closed form, quadrature and finite-difference levels side by side
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct UnitsArgs {
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// coulomb, oscillator, hulthen, morse, linear-oscillator or tabulated
    #[arg(long)]
    pub potential: Option<String>,
    /// Comma-separated key=value pairs, e.g. `v0=10,r0=1`
    #[arg(long)]
    pub params: Option<String>,
    /// key=value file; command-line values take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Two-column (r, V) samples for the tabulated potential
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitsArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Relative agreement between successive quadrature orders
    #[arg(long)]
    pub tol_quad: Option<f64>,
    /// Allowed quantization residual, in units of πℏ
    #[arg(long)]
    pub tol_root: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum MethodArg {
    Closed,
    Quadrature,
    Multiwell,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    MorseNoCentrifugal,
    MorseWithM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CentrifugalArg {
    Ll1,
    Langer,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Single l, or the lowest l when --l-max is also given
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub l_max: Option<u32>,
    /// Single n_r, or the lowest n_r when --nr-max is also given
    #[arg(long)]
    pub nr: Option<u32>,
    #[arg(long)]
    pub nr_max: Option<u32>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "closed")]
    pub method: Vec<MethodArg>,
    /// Closed-form variant (Morse defaults to morse-with-m)
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Number of allowed intervals for the multiwell method
    #[arg(long, default_value_t = 2)]
    pub cuts: usize,
    /// Signed search range `lo:hi` for the multiwell method
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Interior grid points for the oracle
    #[arg(long, default_value_t = wkb_core::oracle::DEFAULT_POINTS)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = CentrifugalArg::Ll1)]
    pub centrifugal: CentrifugalArg,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AngularArgs {
    #[arg(long)]
    pub l: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub mz: i32,
    /// Number of θ samples of the angular function on [0, π] (JSON only)
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub units: UnitsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    FullWkb,
    StandingWave,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 0)]
    pub nr: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub mz: i32,
    #[arg(long, value_enum, default_value_t = FormArg::FullWkb)]
    pub form: FormArg,
    /// Source of the energy: closed or quadrature
    #[arg(long, value_enum, default_value_t = MethodArg::Quadrature)]
    pub method: MethodArg,
    #[arg(long, default_value_t = wkb_core::wavefunction::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long)]
    pub normalize: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 2)]
    pub nr_max: u32,
    #[arg(long, default_value_t = wkb_core::oracle::DEFAULT_POINTS)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}
