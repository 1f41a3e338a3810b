//! `vdc-zeta`: command-line front end for the verification campaigns.
//!
//! Standard output carries only the final summary (JSON). Progress goes to
//! standard error through `env_logger`; set `RUST_LOG=info` to see it.
//!
//! Exit status: 0 when the verdict is pass/PROVED, 1 when it is undecided or
//! failed, 2 on invalid arguments.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vdc_zeta::Execution;

/// Environment variable naming the default checkpoint directory.
pub const CHECKPOINT_DIR_ENV: &str = "VDC_ZETA_CHECKPOINT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "vdc-zeta",
    version,
    about = "Certified bounds for |zeta(1/2+it)|"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Write the full JSON report (config, records, summary, provenance) here.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Write the CSV table for the command here.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Worker threads; 1 runs everything sequentially. Defaults to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl GlobalOpts {
    pub fn exec(&self) -> Execution {
        match self.threads {
            Some(1) => Execution::Sequential,
            _ => Execution::Parallel,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partitioned Euler-Maclaurin sweep of |zeta(1/2+it)| over [a0, b0].
    VerifyRange(VerifyRangeArgs),
    /// Enclosures of the constants a1, a2, a3.
    DeriveConstants(DeriveArgs),
    /// Certified crossover between a bound and 0.63 t^{1/6} log t.
    Crossover(CrossoverArgs),
    /// Lower bound for the Riemann-Siegel-Lehman ratio over [t_min, inf).
    Barrier(BarrierArgs),
    /// Randomized brute-force checks of the van der Corput lemma.
    VdcOracle(OracleArgs),
    /// Compare the large-t bounds with the largest known value of |zeta|.
    LargeValue,
    /// Grid search for large |zeta(1/2+it)| / (t^{1/6} log t).
    SearchWitness(WitnessArgs),
    /// Enclosure of zeta(1/2+it) over a point or a t-interval.
    ZetaEval(ZetaEvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmRuleArg {
    /// N = ceil(2t).
    TwiceT,
    /// N = ceil(60(t+1)).
    SixtyTPlusOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThresholdArg {
    /// envelope <= bound.
    Constant,
    /// envelope / (t^{1/6} log t) <= bound.
    PowerLog,
}

#[derive(Args, Debug)]
pub struct VerifyRangeArgs {
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub a0: f64,
    #[arg(long, default_value_t = 200.0, allow_negative_numbers = true)]
    pub b0: f64,
    /// Subintervals per unit length [default: 16384 when b0 <= 3, else 128].
    #[arg(long = "Q", value_name = "Q")]
    pub q: Option<u64>,
    /// Main-sum length rule [default: sixty-t-plus-one when b0 <= 3, else twice-t].
    #[arg(long, value_enum)]
    pub em_rule: Option<EmRuleArg>,
    /// Bernoulli correction terms.
    #[arg(long, default_value_t = 1)]
    pub corrections: u32,
    /// Threshold form [default: constant when b0 <= 3, else power-log].
    #[arg(long, value_enum)]
    pub threshold: Option<ThresholdArg>,
    /// Threshold value [default: 1.461 for constant, 0.63 for power-log].
    #[arg(long)]
    pub bound: Option<f64>,
    /// Depth of fail-wide bisection on a failing subinterval.
    #[arg(long, default_value_t = vdc_zeta::harness::DEFAULT_RETRIES)]
    pub max_retries: u32,
    /// JSON-lines checkpoint; resumed if present.
    #[arg(long, value_name = "PATH")]
    pub checkpoint: Option<PathBuf>,
    /// Log progress every N subintervals (0 disables).
    #[arg(long, default_value_t = 4096)]
    pub progress_every: u64,
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    #[arg(long, default_value_t = vdc_zeta::pipeline::R0_DEFAULT)]
    pub r0: u64,
    /// eta as a decimal [default: (75/64)^{2/3}].
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long, default_value_t = vdc_zeta::pipeline::T0)]
    pub t0: f64,
    /// Also derive the constants for every admissible r0.
    #[arg(long)]
    pub scan_r0: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    LehmanVsC0,
    VdcVsC0,
}

#[derive(Args, Debug)]
pub struct CrossoverArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// `lo:hi` or `lo:inf` [default: 200:9.3e7 or 9.3e7:inf].
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long, default_value_t = 60)]
    pub max_depth: u32,
    #[arg(long, default_value_t = 1 << 20)]
    pub max_boxes: usize,
}

#[derive(Args, Debug)]
pub struct BarrierArgs {
    #[arg(long, default_value_t = 3.0)]
    pub t_min: f64,
    /// Boxes within this distance of the best value are retired.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// The certified lower bound must exceed this.
    #[arg(long, default_value_t = 0.541)]
    pub threshold: f64,
    #[arg(long, default_value_t = 60)]
    pub max_depth: u32,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e4)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1e8)]
    pub t_max: f64,
    /// eta as a decimal [default: (75/64)^{2/3}].
    #[arg(long)]
    pub eta: Option<String>,
    /// Check the weighted sums exhaustively for every M up to this.
    #[arg(long, default_value_t = 10_000)]
    pub weighted_max: u64,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// `lo:hi`.
    #[arg(long, default_value = "3:5e4")]
    pub range: String,
    #[arg(long, default_value_t = 0.05)]
    pub coarse_step: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub fine_step: f64,
    /// Coarse maxima refined on the fine grid.
    #[arg(long, default_value_t = 8)]
    pub refine_top: usize,
}

#[derive(Args, Debug)]
pub struct ZetaEvalArgs {
    /// `t` or `lo:hi`.
    #[arg(long, allow_negative_numbers = true)]
    pub t: String,
    #[arg(long, value_enum, default_value = "twice-t")]
    pub em_rule: EmRuleArg,
    #[arg(long, default_value_t = 4)]
    pub corrections: u32,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.global.threads {
        if n > 1 && !vdc_zeta::exec::init_threads(n) {
            log::warn!("could not size the thread pool to {n}");
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => match output::emit(&cli.global, &outcome) {
            Ok(()) => ExitCode::from(if outcome.pass { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
