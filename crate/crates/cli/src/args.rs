use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Average bit error rate of square M-QAM over Nakagami-m fading.
#[derive(Parser, Debug)]
#[command(name = "nakagami-aber", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the average BER at a single SNR
    Aber(AberArgs),
    /// Tabulate the average BER over an SNR grid (CSV)
    Sweep(SweepArgs),
    /// Log-scaled discrepancy of each method against the quadrature reference (CSV)
    Discrepancy(SweepArgs),
    /// Wall-time gain of the closed form over quadrature at 5-digit precision (CSV)
    Bench(BenchArgs),
    /// Run the built-in identity and invariant checks
    Selftest(SelftestArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    /// Incomplete beta plus the truncated Appell-F1 series
    Closed,
    /// Averaged nearest-neighbour approximation
    Lu,
    /// Quadrature of the exact instantaneous BER
    Oracle,
    /// Exponential-sum Q approximation (Chiani unless --expq is given)
    Expq,
}

/// Channel, modulation and method selection shared by the evaluating commands.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Nakagami shape parameter m (> 0)
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,

    /// Square QAM order (4, 16, 64, 256, 1024, 4096)
    #[arg(long = "mod")]
    pub modulation: Option<u32>,

    /// Mean SNR in dB
    #[arg(long, allow_hyphen_values = true, conflicts_with = "snr_db_range")]
    pub snr_db: Option<f64>,

    /// Mean SNR grid in dB as start:stop:step (stop inclusive)
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db_range: Option<String>,

    /// Evaluation methods, comma separated
    #[arg(long, value_enum, value_delimiter = ',')]
    pub method: Vec<MethodKind>,

    /// Series truncation(s) N for the closed form, comma separated
    #[arg(long, value_delimiter = ',')]
    pub terms: Vec<usize>,

    /// Adaptive series truncation: stop once |term| < tol * |partial sum|
    #[arg(long, conflicts_with = "terms")]
    pub adaptive_tol: Option<f64>,

    /// Relative tolerance of the quadrature oracle
    #[arg(long)]
    pub rel_tol: Option<f64>,

    /// Custom exponential Q approximation as w1:r1,w2:r2,... (Q(x) ≈ Σ w e^{-r x²})
    #[arg(long)]
    pub expq: Option<String>,

    /// key=value file supplying defaults for any flag of this command
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Where and how tabular results are written.
#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// CSV destination (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads for grid evaluation
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Write 0 in timing columns so output is reproducible byte for byte
    #[arg(long)]
    pub no_timing: bool,

    /// Also write a self-contained matplotlib script plotting the results
    #[arg(long)]
    pub emit_plot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AberArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Also print the variant with c0 (instead of 2c0 - c0²) multiplying the
    /// incomplete-beta term
    #[arg(long)]
    pub diagnostic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    /// Timed repetitions per grid point (medians are reported); at least 10
    #[arg(long, default_value_t = 31)]
    pub repetitions: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SelftestArgs {
    /// Run only these groups (repeatable or comma separated)
    #[arg(long, value_delimiter = ',')]
    pub group: Vec<String>,

    /// List the groups without running them
    #[arg(long)]
    pub list: bool,

    /// key=value file supplying defaults for any flag of this command
    #[arg(long)]
    pub config: Option<PathBuf>,
}
