use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tentmap::{BitWidth, Tap};

#[derive(Debug, Parser)]
#[command(name = "tentmap", version, about = "Polarized fixed-point tent map bit generator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a trajectory.
    Gen(GenArgs),
    /// Run randomness and chaos analyses and write a JSON report plus CSVs.
    Analyze(AnalyzeArgs),
    /// Inspect, export or simulate the gate-level circuit.
    Netlist(NetlistArgs),
    /// Transient and period of one seed, or of every seed.
    Cycles(CyclesArgs),
    /// Elements-per-bit comparison table.
    Compare(CompareArgs),
}

pub fn parse_width(s: &str) -> Result<BitWidth, String> {
    let k: u32 = s.parse().map_err(|_| format!("not an integer: {s:?}"))?;
    BitWidth::new(k).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Value(u64),
    Random,
}

pub fn parse_seed(s: &str) -> Result<SeedArg, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("random") {
        return Ok(SeedArg::Random);
    }
    let clean = s.replace('_', "");
    let parsed = if let Some(h) = clean.strip_prefix("0x").or_else(|| clean.strip_prefix("0X")) {
        u64::from_str_radix(h, 16)
    } else if let Some(b) = clean.strip_prefix("0b").or_else(|| clean.strip_prefix("0B")) {
        u64::from_str_radix(b, 2)
    } else {
        clean.parse()
    };
    parsed
        .map(SeedArg::Value)
        .map_err(|_| format!("expected a number (0x.., 0b.., decimal) or `random`, got {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One output bit per line.
    Bits,
    /// One state word per line, upper-case hexadecimal.
    Hex,
    /// index,word,value
    Csv,
    /// Output bits packed into bytes, first bit in the most significant position.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Word-level model.
    Word,
    /// Gate-level netlist simulation.
    Netlist,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Word => "word",
            Backend::Netlist => "netlist",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TapArg {
    /// Most significant bit b_0 (default).
    Msb,
    /// Least significant bit (non-default alternative).
    Lsb,
}

impl From<TapArg> for Tap {
    fn from(t: TapArg) -> Tap {
        match t {
            TapArg::Msb => Tap::Msb,
            TapArg::Lsb => Tap::Lsb,
        }
    }
}

/// Register and seed options shared by the generating commands.
#[derive(Debug, Args)]
pub struct MapArgs {
    /// Register width k (2..=64).
    #[arg(long = "bits", value_parser = parse_width)]
    pub width: BitWidth,
    /// Disable the perturbation bit.
    #[arg(long)]
    pub unperturbed: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "bits")]
    pub format: Format,
    /// Which state bit is the generator output.
    #[arg(long, value_enum, default_value = "msb")]
    pub tap: TapArg,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// Initial word (hex 0x.., binary 0b.., decimal) or `random`.
    #[arg(long, value_parser = parse_seed)]
    pub seed: SeedArg,
    /// Number of steps; n + 1 words are written.
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "word")]
    pub backend: Backend,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestName {
    Entropy,
    Autocorr,
    Lyapunov,
    Histogram,
    ReturnMap,
}

impl TestName {
    pub fn name(self) -> &'static str {
        match self {
            TestName::Entropy => "entropy",
            TestName::Autocorr => "autocorr",
            TestName::Lyapunov => "lyapunov",
            TestName::Histogram => "histogram",
            TestName::ReturnMap => "return-map",
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, value_parser = parse_seed)]
    pub seed: SeedArg,
    /// Number of samples.
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub tests: Vec<TestName>,
    #[arg(long, value_enum, default_value = "word")]
    pub backend: Backend,
    #[arg(long, value_enum, default_value = "msb")]
    pub tap: TapArg,
    /// Directory for the CSV files.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// JSON report path (stdout when omitted).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub max_lag: usize,
    #[arg(long, default_value_t = 64)]
    pub bins: usize,
    #[arg(long, default_value_t = 2)]
    pub embed_dim: usize,
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    #[arg(long, default_value_t = 10)]
    pub theiler_window: usize,
    #[arg(long, default_value_t = 12)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 1)]
    pub fit_first: usize,
    #[arg(long, default_value_t = 8)]
    pub fit_last: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["stats", "export", "simulate"]))]
pub struct NetlistArgs {
    #[command(flatten)]
    pub map: MapArgs,
    /// Print the element census.
    #[arg(long)]
    pub stats: bool,
    /// Write the text netlist to PATH, or stdout when PATH is omitted.
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    pub export: Option<PathBuf>,
    /// Run the gate-level simulation and write a trajectory.
    #[arg(long, requires_all = ["seed", "n"])]
    pub simulate: bool,
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    #[arg(long, short)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["seed", "exhaustive"]))]
pub struct CyclesArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    /// Every seed of the state space (k <= 20).
    #[arg(long)]
    pub exhaustive: bool,
    /// CSV file (stdout when omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Widths of this circuit to list.
    #[arg(long = "bits", value_parser = parse_width, value_delimiter = ',', default_value = "16,32,64")]
    pub widths: Vec<BitWidth>,
}
