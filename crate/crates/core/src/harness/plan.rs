use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use crate::aco::{AcoParams, UpdateStrategy};
use crate::scheduling::OptimizationMode;

use super::SolverKind;

/// Environment variable naming the fallback directory for instance paths.
pub const INSTANCE_DIR_VAR: &str = "MSRCPSP_INSTANCE_DIR";

/// Optional overrides of the colony defaults, as accepted by plan files and
/// the command line.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub ants: Option<usize>,
    pub mu: Option<f64>,
    pub p_init: Option<f64>,
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub p_min: Option<f64>,
    pub gamma: Option<usize>,
    pub psi: Option<f64>,
    pub kappa: Option<i64>,
    pub h_init: Option<f64>,
    pub beta: Option<f64>,
    pub max_iterations: Option<usize>,
    pub time_limit_secs: Option<f64>,
}

impl ParamOverrides {
    pub fn apply(&self, params: &mut AcoParams) {
        macro_rules! set {
            ($field:ident => $target:ident) => {
                if let Some(v) = self.$field {
                    params.$target = v;
                }
            };
        }
        set!(ants => ants);
        set!(mu => evaporation);
        set!(p_init => initial_pheromone);
        set!(alpha => alpha);
        set!(delta => deposit);
        set!(p_min => min_pheromone);
        set!(gamma => stall_limit);
        set!(psi => variety_threshold);
        set!(kappa => kappa_init);
        set!(h_init => seed_weight);
        set!(beta => beta);
        if let Some(v) = self.max_iterations {
            params.max_iterations = Some(v);
        }
        if let Some(secs) = self.time_limit_secs {
            params.time_limit = Duration::try_from_secs_f64(secs).ok();
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    instances: Vec<String>,
    #[serde(default = "default_modes")]
    modes: Vec<String>,
    #[serde(default = "default_strategies")]
    strategies: Vec<String>,
    #[serde(default = "default_solvers")]
    solvers: Vec<String>,
    #[serde(default = "default_repetitions")]
    repetitions: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    params: ParamOverrides,
}

fn default_modes() -> Vec<String> {
    vec!["do".into(), "co".into()]
}

fn default_strategies() -> Vec<String> {
    UpdateStrategy::ALL_STRATEGIES.iter().map(|s| s.label().to_string()).collect()
}

fn default_solvers() -> Vec<String> {
    vec!["heuristic".into(), "aco".into(), "hantco".into()]
}

fn default_repetitions() -> usize {
    10
}

/// A batch of solver runs.
///
/// Plan files are TOML:
///
/// ```toml
/// instances = ["100_10_27_9_D2.def"]
/// modes = ["do", "co"]
/// strategies = ["all", "elite", "diff"]
/// solvers = ["heuristic", "aco", "hantco"]
/// repetitions = 10
/// seed = 1
///
/// [params]
/// gamma = 150
/// ```
///
/// Everything but `instances` has a default; the values above are the
/// defaults except `seed` (0) and `params` (none).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub instances: Vec<PathBuf>,
    pub modes: Vec<OptimizationMode>,
    pub strategies: Vec<UpdateStrategy>,
    pub solvers: Vec<SolverKind>,
    pub repetitions: usize,
    pub base_seed: u64,
    pub params: AcoParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanError(pub String);

impl std::fmt::Display for PlanError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for PlanError {}

impl ExperimentPlan {
    /// Parses plan text. Instance paths are resolved with
    /// [`resolve_instance_path`] against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path, instance_dir: Option<&Path>) -> Result<Self, PlanError> {
        let raw: RawPlan = toml::from_str(text).map_err(|e| PlanError(e.to_string()))?;
        fn each<T: std::str::FromStr>(items: &[String], what: &str) -> Result<Vec<T>, PlanError>
        where
            T::Err: std::fmt::Display,
        {
            if items.is_empty() {
                return Err(PlanError(format!("plan lists no {what}")));
            }
            items
                .iter()
                .map(|s| s.parse::<T>().map_err(|e| PlanError(e.to_string())))
                .collect()
        }
        if raw.repetitions < 1 {
            return Err(PlanError("repetitions must be at least 1".into()));
        }
        if raw.instances.is_empty() {
            return Err(PlanError("plan lists no instances".into()));
        }
        let mut params = AcoParams::default();
        raw.params.apply(&mut params);
        params
            .validate()
            .map_err(|e| PlanError(format!("params: {e}")))?;
        Ok(ExperimentPlan {
            instances: raw
                .instances
                .iter()
                .map(|p| resolve_instance_path(Path::new(p), base_dir, instance_dir))
                .collect(),
            modes: each(&raw.modes, "modes")?,
            strategies: each(&raw.strategies, "strategies")?,
            solvers: each(&raw.solvers, "solvers")?,
            repetitions: raw.repetitions,
            base_seed: raw.seed,
            params,
        })
    }

    pub fn load(path: &Path, instance_dir: Option<&Path>) -> Result<Self, PlanError> {
        let text = std::fs::read_to_string(path).map_err(|e| PlanError(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base, instance_dir)
    }

    /// Seed of the `index`-th repetition.
    pub fn seed_for(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }
}

/// Absolute paths are kept. A relative path is taken relative to `base_dir`
/// if that file exists, else relative to `instance_dir` if given and the
/// file exists there, else left relative to `base_dir`.
pub fn resolve_instance_path(path: &Path, base_dir: &Path, instance_dir: Option<&Path>) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    let local = base_dir.join(path);
    if local.exists() {
        return local;
    }
    match instance_dir.map(|d| d.join(path)) {
        Some(p) if p.exists() => p,
        _ => local,
    }
}
