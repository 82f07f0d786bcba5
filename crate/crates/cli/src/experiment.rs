//! Experiment runner: fans out instances x modes x depths x runs, appends
//! one CSV row per run (resumable), and writes figure-ready quantile
//! aggregates plus the instance serializations.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qudit_qaoa::batch::{derive_seed, run_batch_timed, RunTask};
use qudit_qaoa::metrics::{self, QuantileSummary};
use qudit_qaoa::problems::{gen_constraint_only, gen_ev_problem, gen_random_spin};
use qudit_qaoa::{BuiltProblem, ConstraintMode, ProblemInstance, QaoaConfig};

use crate::config::{Benchmark, ConfigError, ExperimentConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] qudit_qaoa::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// One run of the sweep, in the persisted column order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub benchmark: String,
    pub instance_id: usize,
    pub run_id: usize,
    /// Mode label: a0 / a1 / a2 / slack (circuit_aX under the circuit engine).
    pub mode: String,
    /// Penalty exponent; empty for slack runs.
    pub a: Option<u8>,
    pub p: usize,
    pub m0: Option<f64>,
    /// 1 when any shot hit an optimal feasible state.
    pub success: u8,
    /// Best sampled relative energy excess; empty when E0 = 0.
    pub approximation_ratio: Option<f64>,
    pub feasible_weight: f64,
    pub final_energy: f64,
    pub n_evaluations: usize,
    pub termination_reason: String,
    /// Wall-clock seconds; the only nondeterministic column.
    pub wall_time: f64,
}

impl ResultRow {
    /// Identity of a row within a sweep, used to skip completed work on
    /// resume. Excludes all measured outputs.
    fn key(&self) -> (usize, usize, String, usize, String) {
        (self.instance_id, self.run_id, self.mode.clone(), self.p, format_m0(self.m0))
    }
}

fn format_m0(m0: Option<f64>) -> String {
    m0.map(|v| format!("{v}")).unwrap_or_default()
}

/// Aggregated view of one sweep point, pooled over instances and runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub benchmark: String,
    pub mode: String,
    pub p: usize,
    pub m0: Option<f64>,
    /// Feasible weight of the uniform initial state.
    pub baseline: f64,
    /// Fraction of runs that sampled an optimal state.
    pub success_rate: f64,
    pub feasible_weight: QuantileSummary,
    /// Absent when E0 = 0 for every contributing run.
    pub approximation_ratio: Option<QuantileSummary>,
    pub n_runs: usize,
}

#[derive(Debug)]
pub struct ExperimentOutcome {
    pub rows: Vec<ResultRow>,
    pub aggregates: Vec<SweepSummary>,
    pub csv_path: PathBuf,
    /// Rows found already complete and skipped on resume.
    pub n_skipped: usize,
}

/// Builds instance `instance_id` of the configured benchmark. The coupling
/// draw depends only on (master_seed, instance_id), so every m0 point sees
/// the same couplings.
pub fn build_instance(
    config: &ExperimentConfig,
    instance_id: usize,
    m0: Option<f64>,
) -> Result<ProblemInstance, CliError> {
    let seed = derive_seed(config.master_seed, &[instance_id as u64]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instance = match config.benchmark {
        Benchmark::RandomSpin => {
            let m0 = m0.expect("validated: spin benchmarks sweep m0");
            gen_random_spin(config.n.unwrap(), m0, 1, config.lambda, &mut rng)?
        }
        Benchmark::ConstraintOnly => {
            let m0 = m0.expect("validated: spin benchmarks sweep m0");
            gen_constraint_only(config.n.unwrap(), m0, 1, config.lambda)?
        }
        Benchmark::EvCharging => gen_ev_problem(
            config.n_ev.unwrap(),
            config.t.unwrap(),
            config.e_required.clone().unwrap(),
            config.e_max.unwrap(),
            1,
            config.lambda,
            &mut rng,
        )?,
    };
    instance.seed = seed;
    Ok(instance)
}

/// Runs the whole sweep. Appends to an existing results.csv, skipping rows
/// whose identifying columns are already present; every output except
/// wall_time is a pure function of the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, CliError> {
    config.validate()?;
    let out_dir = Path::new(&config.out);
    fs::create_dir_all(out_dir.join("instances"))?;
    let csv_path = out_dir.join("results.csv");

    let mut rows: Vec<ResultRow> = Vec::new();
    let mut done: HashSet<(usize, usize, String, usize, String)> = HashSet::new();
    if csv_path.exists() {
        let mut reader = csv::Reader::from_path(&csv_path)?;
        for row in reader.deserialize::<ResultRow>() {
            let row = row?;
            done.insert(row.key());
            rows.push(row);
        }
    }
    let n_skipped_total = rows.len();

    let mut writer = if n_skipped_total > 0 {
        csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(fs::OpenOptions::new().append(true).open(&csv_path)?)
    } else {
        csv::Writer::from_path(&csv_path)?
    };

    let mut baselines: BTreeMap<(String, String), f64> = BTreeMap::new();

    for &m0 in &config.m0_points() {
        for instance_id in 0..config.n_instances {
            let instance = build_instance(config, instance_id, m0)?;
            persist_instance(out_dir, &instance, instance_id, m0)?;
            for mode_label in &config.modes {
                let mode = config.parse_mode(mode_label)?;
                let built = BuiltProblem::build(&instance, mode)?;
                baselines
                    .entry((mode_label.clone(), format_m0(m0)))
                    .or_insert_with(|| metrics::baseline_feasible_weight(&built));
                for &p in &config.layers {
                    let qaoa = QaoaConfig::new(p, mode, config.shots);
                    let pending: Vec<(usize, u64)> = (0..config.n_runs)
                        .filter(|&run_id| {
                            !done.contains(&(
                                instance_id,
                                run_id,
                                mode_label.clone(),
                                p,
                                format_m0(m0),
                            ))
                        })
                        .map(|run_id| {
                            (
                                run_id,
                                derive_seed(
                                    config.master_seed,
                                    &[instance_id as u64, run_id as u64],
                                ),
                            )
                        })
                        .collect();
                    if pending.is_empty() {
                        continue;
                    }
                    let tasks: Vec<RunTask<'_>> = pending
                        .iter()
                        .map(|&(_, seed)| RunTask { problem: &built, config: &qaoa, seed })
                        .collect();
                    let records = run_batch_timed(&tasks)?;
                    for ((run_id, _), (record, wall_time)) in pending.iter().zip(records) {
                        let m = metrics::evaluate_run(&record, &built, &instance);
                        let row = ResultRow {
                            benchmark: config.benchmark.as_str().into(),
                            instance_id,
                            run_id: *run_id,
                            mode: mode_label.clone(),
                            a: match mode {
                                ConstraintMode::DirectPenalty { a }
                                | ConstraintMode::CircuitPenalty { a } => Some(a),
                                ConstraintMode::Slack => None,
                            },
                            p,
                            m0,
                            success: m.success as u8,
                            approximation_ratio: m.approximation_ratio,
                            feasible_weight: m.feasible_weight,
                            final_energy: m.final_energy,
                            n_evaluations: m.n_evaluations,
                            termination_reason: m.termination_reason,
                            wall_time,
                        };
                        writer.serialize(&row)?;
                        rows.push(row);
                    }
                    // instance-granular durability: a crash loses at most
                    // the current batch
                    writer.flush()?;
                }
            }
        }
    }
    writer.flush()?;

    let aggregates = aggregate_rows(&rows, &baselines);
    let json = serde_json::to_string_pretty(&aggregates)?;
    fs::File::create(out_dir.join("aggregates.json"))?.write_all(json.as_bytes())?;

    Ok(ExperimentOutcome { rows, aggregates, csv_path, n_skipped: n_skipped_total })
}

fn persist_instance(
    out_dir: &Path,
    instance: &ProblemInstance,
    instance_id: usize,
    m0: Option<f64>,
) -> Result<(), CliError> {
    let tag = match m0 {
        Some(v) => format!("_m0_{v}"),
        None => String::new(),
    };
    let path = out_dir.join("instances").join(format!("instance_{instance_id}{tag}.json"));
    if !path.exists() {
        let json = serde_json::to_string_pretty(instance)?;
        fs::File::create(path)?.write_all(json.as_bytes())?;
    }
    Ok(())
}

/// Pools rows by (mode, p, m0) across instances and runs.
pub fn aggregate_rows(
    rows: &[ResultRow],
    baselines: &BTreeMap<(String, String), f64>,
) -> Vec<SweepSummary> {
    let mut groups: BTreeMap<(String, usize, String), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.mode.clone(), row.p, format_m0(row.m0)))
            .or_default()
            .push(row);
    }
    groups
        .into_iter()
        .map(|((mode, p, m0_key), group)| {
            let w: Vec<f64> = group.iter().map(|r| r.feasible_weight).collect();
            let r: Vec<f64> = group.iter().filter_map(|r| r.approximation_ratio).collect();
            let successes: f64 = group.iter().map(|r| r.success as f64).sum();
            SweepSummary {
                benchmark: group[0].benchmark.clone(),
                mode: mode.clone(),
                p,
                m0: group[0].m0,
                baseline: baselines.get(&(mode, m0_key)).copied().unwrap_or(f64::NAN),
                success_rate: successes / group.len() as f64,
                feasible_weight: metrics::summarize(&w).expect("nonempty group"),
                approximation_ratio: metrics::summarize(&r),
                n_runs: group.len(),
            }
        })
        .collect()
}

/// Planned row counts per sweep point, without running anything.
pub fn sweep_info(config: &ExperimentConfig) -> Vec<(String, usize, String, usize)> {
    let mut out = Vec::new();
    for &m0 in &config.m0_points() {
        for mode in &config.modes {
            for &p in &config.layers {
                out.push((
                    mode.clone(),
                    p,
                    format_m0(m0),
                    config.n_instances * config.n_runs,
                ));
            }
        }
    }
    out
}
