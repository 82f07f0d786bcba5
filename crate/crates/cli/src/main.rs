use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qudit_qaoa_cli::config::ExperimentConfig;
use qudit_qaoa_cli::experiment::{build_instance, run_experiment, sweep_info};
use qudit_qaoa_cli::verify::run_verification;

/// Benchmark harness comparing direct-penalty, slack-qudit and SUM-gate
/// circuit encodings of inequality constraints in QAOA.
#[derive(Parser)]
#[command(name = "qaoa-bench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigSource {
    /// TOML config file mirroring the documented ExperimentConfig fields.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in reduced-scale preset: random-spin, constraint-only,
    /// ev-charging.
    #[arg(long)]
    preset: Option<String>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Full protocol: 20 instances x 50 runs (presets default to 5 x 20).
    #[arg(long)]
    paper_scale: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write results.csv, aggregates.json and the
    /// instance files. Reruns resume from an existing results.csv.
    Run {
        #[command(flatten)]
        source: ConfigSource,
        /// Worker threads (default: QAOA_BENCH_WORKERS or all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the cross-module verification suite.
    Verify,
    /// Print one instance's feasible count, optimum and optimal set.
    Inspect {
        #[command(flatten)]
        source: ConfigSource,
        #[arg(long, default_value_t = 0)]
        instance: usize,
        #[arg(long, allow_hyphen_values = true)]
        m0: Option<f64>,
    },
    /// Enumerate the planned sweep points and row counts without running.
    SweepInfo {
        #[command(flatten)]
        source: ConfigSource,
    },
}

impl ConfigSource {
    fn load(&self) -> Result<ExperimentConfig, String> {
        let mut config = match (&self.config, &self.preset) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                ExperimentConfig::from_toml(&text).map_err(|e| e.to_string())?
            }
            (None, Some(name)) => ExperimentConfig::preset(name).map_err(|e| e.to_string())?,
            _ => return Err("pass exactly one of --config or --preset".into()),
        };
        if let Some(seed) = self.seed {
            config.master_seed = seed;
        }
        if let Some(out) = &self.out {
            config.out = out.display().to_string();
        }
        if self.paper_scale {
            config = config.paper_scale();
        }
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

#[cfg(feature = "parallel")]
fn init_workers(workers: Option<usize>) {
    let n = workers.or_else(|| {
        std::env::var("QAOA_BENCH_WORKERS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn init_workers(_workers: Option<usize>) {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run { source, workers } => {
            init_workers(workers);
            let config = source.load()?;
            let outcome = run_experiment(&config).map_err(|e| e.to_string())?;
            if outcome.n_skipped > 0 {
                println!("resumed: {} rows already present", outcome.n_skipped);
            }
            println!("{} rows -> {}", outcome.rows.len(), outcome.csv_path.display());
            for s in &outcome.aggregates {
                let m0 = s.m0.map(|v| format!(" m0={v}")).unwrap_or_default();
                let r = s
                    .approximation_ratio
                    .map(|q| format!(" R_med={:.4}", q.median))
                    .unwrap_or_default();
                println!(
                    "{} {} p={}{m0}: r={:.3} W_med={:.4} base={:.4}{r} ({} runs)",
                    s.benchmark, s.mode, s.p, s.success_rate, s.feasible_weight.median, s.baseline,
                    s.n_runs
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let report = run_verification().map_err(|e| e.to_string())?;
            for check in &report.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("[{status}] {}: {}", check.name, check.detail);
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Inspect { source, instance, m0 } => {
            let config = source.load()?;
            let m0 = m0.or_else(|| config.m0.first().copied());
            let inst = build_instance(&config, instance, m0).map_err(|e| e.to_string())?;
            let n_feasible = inst.feasible_mask.iter().filter(|&&b| b).count();
            println!(
                "instance {instance}: {} of {} basis states feasible, E0 = {}",
                n_feasible,
                inst.register.total_dim(),
                inst.e0
            );
            println!("optimal set ({} states): {:?}", inst.optimal_set.len(), inst.optimal_set);
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepInfo { source } => {
            let config = source.load()?;
            let info = sweep_info(&config);
            let mut total = 0usize;
            for (mode, p, m0, n) in &info {
                let m0 = if m0.is_empty() { String::new() } else { format!(" m0={m0}") };
                println!("{mode} p={p}{m0}: {n} runs");
                total += n;
            }
            println!("total: {total} rows");
            Ok(ExitCode::SUCCESS)
        }
    }
}
