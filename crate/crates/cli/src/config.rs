//! Experiment configuration: TOML-backed, with scaled-down presets for the
//! three benchmark figures and a `--paper-scale` switch restoring the full
//! 20-instance / 50-run protocol.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use qudit_qaoa::ConstraintMode;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown preset '{0}' (expected random-spin, constraint-only or ev-charging)")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Benchmark {
    RandomSpin,
    ConstraintOnly,
    EvCharging,
}

impl Benchmark {
    pub fn as_str(&self) -> &'static str {
        match self {
            Benchmark::RandomSpin => "random_spin",
            Benchmark::ConstraintOnly => "constraint_only",
            Benchmark::EvCharging => "ev_charging",
        }
    }
}

/// How the direct-penalty phase is realized: as one diagonal, or as the
/// SUM-gate circuit on an ancilla qudit. Slack runs are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Direct,
    Circuit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub benchmark: Benchmark,
    /// Qubit count for the spin benchmarks.
    #[serde(default)]
    pub n: Option<usize>,
    /// EV-charging shape.
    #[serde(default)]
    pub n_ev: Option<usize>,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub e_required: Option<Vec<usize>>,
    #[serde(default)]
    pub e_max: Option<usize>,
    /// Magnetization sweep (spin benchmarks only).
    #[serde(default)]
    pub m0: Vec<f64>,
    /// Penalty modes: "a0", "a1", "a2", "slack".
    pub modes: Vec<String>,
    /// QAOA depths to sweep.
    pub layers: Vec<usize>,
    pub lambda: f64,
    pub n_instances: usize,
    pub n_runs: usize,
    pub shots: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub engine: Engine,
    pub out: String,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Reduced-scale defaults per benchmark; `paper_scale()` restores the
    /// full protocol.
    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        let config = match name {
            "random-spin" => Self {
                benchmark: Benchmark::RandomSpin,
                n: Some(9),
                n_ev: None,
                t: None,
                e_required: None,
                e_max: None,
                m0: (0..10).map(|k| -4.5 + k as f64).collect(),
                modes: ["a0", "a1", "a2", "slack"].map(String::from).to_vec(),
                layers: vec![1],
                lambda: 4.0,
                n_instances: 5,
                n_runs: 20,
                shots: 64,
                master_seed: 42,
                engine: Engine::Direct,
                out: "results/random_spin".into(),
            },
            "constraint-only" => Self {
                benchmark: Benchmark::ConstraintOnly,
                n: Some(9),
                m0: (0..10).map(|k| -4.5 + k as f64).collect(),
                modes: ["a0", "a1", "a2", "slack"].map(String::from).to_vec(),
                layers: vec![1, 3, 5],
                n_instances: 1,
                out: "results/constraint_only".into(),
                ..Self::preset("random-spin")?
            },
            "ev-charging" => Self {
                benchmark: Benchmark::EvCharging,
                n: None,
                n_ev: Some(2),
                t: Some(4),
                e_required: Some(vec![2, 2]),
                e_max: Some(1),
                m0: vec![],
                modes: ["a0", "a1", "a2", "slack"].map(String::from).to_vec(),
                layers: vec![1, 2, 3],
                out: "results/ev_charging".into(),
                ..Self::preset("random-spin")?
            },
            other => return Err(ConfigError::UnknownPreset(other.into())),
        };
        config.validate()?;
        Ok(config)
    }

    /// Full protocol: 20 instances, 50 runs each.
    pub fn paper_scale(mut self) -> Self {
        self.n_instances = 20;
        self.n_runs = 50;
        if self.benchmark == Benchmark::ConstraintOnly {
            self.n_instances = 1;
        }
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: &str| Err(ConfigError::Invalid(msg.into()));
        if self.n_instances == 0 || self.n_runs == 0 || self.shots == 0 {
            return bad("n_instances, n_runs and shots must all be >= 1");
        }
        if self.layers.is_empty() || self.layers.contains(&0) {
            return bad("layers must be a nonempty list of depths >= 1");
        }
        if self.modes.is_empty() {
            return bad("modes must be nonempty");
        }
        for m in &self.modes {
            self.parse_mode(m)?;
        }
        if self.lambda <= 0.0 {
            return bad("lambda must be > 0");
        }
        match self.benchmark {
            Benchmark::RandomSpin | Benchmark::ConstraintOnly => {
                if self.n.is_none() {
                    return bad("spin benchmarks need n");
                }
                if self.m0.is_empty() {
                    return bad("spin benchmarks need an m0 sweep list");
                }
                if self.benchmark == Benchmark::ConstraintOnly && self.n_instances != 1 {
                    return bad("constraint_only has no instance randomness; use n_instances = 1");
                }
            }
            Benchmark::EvCharging => {
                if self.n_ev.is_none()
                    || self.t.is_none()
                    || self.e_required.is_none()
                    || self.e_max.is_none()
                {
                    return bad("ev_charging needs n_ev, t, e_required and e_max");
                }
                if !self.m0.is_empty() {
                    return bad("m0 does not apply to ev_charging");
                }
            }
        }
        Ok(())
    }

    /// Parses a mode label, applying the engine choice to penalty modes.
    pub fn parse_mode(&self, label: &str) -> Result<ConstraintMode, ConfigError> {
        let mode = match (label, self.engine) {
            ("slack", _) => ConstraintMode::Slack,
            ("a0", Engine::Direct) => ConstraintMode::DirectPenalty { a: 0 },
            ("a1", Engine::Direct) => ConstraintMode::DirectPenalty { a: 1 },
            ("a2", Engine::Direct) => ConstraintMode::DirectPenalty { a: 2 },
            ("a0", Engine::Circuit) => ConstraintMode::CircuitPenalty { a: 0 },
            ("a1", Engine::Circuit) => ConstraintMode::CircuitPenalty { a: 1 },
            ("a2", Engine::Circuit) => ConstraintMode::CircuitPenalty { a: 2 },
            _ => {
                return Err(ConfigError::Invalid(format!(
                    "unknown mode '{label}' (expected a0, a1, a2 or slack)"
                )))
            }
        };
        Ok(mode)
    }

    /// Sweep points of the magnetization axis; a single `None` point for
    /// benchmarks without one.
    pub fn m0_points(&self) -> Vec<Option<f64>> {
        if self.m0.is_empty() {
            vec![None]
        } else {
            self.m0.iter().copied().map(Some).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid_and_scale_up() {
        for name in ["random-spin", "constraint-only", "ev-charging"] {
            let c = ExperimentConfig::preset(name).unwrap();
            assert_eq!(c.n_runs, 20);
            let full = c.paper_scale();
            assert_eq!(full.n_runs, 50);
            full.validate().unwrap();
        }
        assert!(ExperimentConfig::preset("nope").is_err());
    }

    #[test]
    fn toml_roundtrip() {
        let c = ExperimentConfig::preset("random-spin").unwrap();
        let text = toml::to_string(&c).unwrap();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(back.m0, c.m0);
        assert_eq!(back.modes, c.modes);
        assert_eq!(back.master_seed, c.master_seed);
    }

    #[test]
    fn rejects_bad_fields() {
        let mut c = ExperimentConfig::preset("random-spin").unwrap();
        c.modes.push("a3".into());
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::preset("random-spin").unwrap();
        c.n_runs = 0;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::preset("ev-charging").unwrap();
        c.m0 = vec![1.0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn engine_switches_penalty_realization() {
        let mut c = ExperimentConfig::preset("random-spin").unwrap();
        assert_eq!(c.parse_mode("a1").unwrap(), ConstraintMode::DirectPenalty { a: 1 });
        c.engine = Engine::Circuit;
        assert_eq!(c.parse_mode("a1").unwrap(), ConstraintMode::CircuitPenalty { a: 1 });
        assert_eq!(c.parse_mode("slack").unwrap(), ConstraintMode::Slack);
    }
}
