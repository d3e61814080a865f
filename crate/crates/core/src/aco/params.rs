use std::time::Duration;

use crate::error::SolveError;

/// Colony tunables. [`Default`] gives the tuned configuration used for all
/// reported experiments: 12 ants, 10% evaporation, initial pheromone 1.5,
/// alpha 1, deposit 0.05, floor 0.05, stall limit 150, variety threshold 0.1
/// and a DIFF counter seeded at 20.
#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    /// Number of ants constructing a solution every iteration.
    pub ants: usize,
    /// Fraction of pheromone lost per iteration, in (0, 1).
    pub evaporation: f64,
    pub initial_pheromone: f64,
    /// Exponent applied to pheromone values in roulette selection.
    pub alpha: f64,
    /// Base amount of pheromone an ant deposits on its path.
    pub deposit: f64,
    /// Floor no edge can evaporate below.
    pub min_pheromone: f64,
    /// Iterations without global-best improvement before stopping.
    pub stall_limit: usize,
    /// Population-variety threshold of the DIFF strategy.
    pub variety_threshold: f64,
    /// Initial value of the DIFF counter bounding worst-ant deposits.
    pub kappa_init: i64,
    /// Multiplier of the pheromone put on the heuristic seed path.
    pub seed_weight: f64,
    /// Heuristic-desirability exponent; only 0 is supported.
    pub beta: f64,
    pub seed: u64,
    /// Hard cap on iterations, independent of the stall limit.
    pub max_iterations: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            ants: 12,
            evaporation: 0.1,
            initial_pheromone: 1.5,
            alpha: 1.0,
            deposit: 0.05,
            min_pheromone: 0.05,
            stall_limit: 150,
            variety_threshold: 0.1,
            kappa_init: 20,
            seed_weight: 1.0,
            beta: 0.0,
            seed: 0,
            max_iterations: None,
            time_limit: None,
        }
    }
}

impl AcoParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: String| Err(SolveError::InvalidParams(msg));
        if self.ants < 1 {
            return bad(format!("ant count must be at least 1, got {}", self.ants));
        }
        if !(self.evaporation > 0.0 && self.evaporation < 1.0) {
            return bad(format!("evaporation must lie in (0, 1), got {}", self.evaporation));
        }
        if !(self.min_pheromone > 0.0 && self.min_pheromone.is_finite()) {
            return bad(format!("pheromone floor must be positive, got {}", self.min_pheromone));
        }
        if !(self.min_pheromone < self.initial_pheromone && self.initial_pheromone.is_finite()) {
            return bad(format!(
                "initial pheromone {} must exceed the floor {}",
                self.initial_pheromone, self.min_pheromone
            ));
        }
        if self.stall_limit < 1 {
            return bad("stall limit must be at least 1".into());
        }
        if !(self.variety_threshold > 0.0 && self.variety_threshold < 1.0) {
            return bad(format!(
                "variety threshold must lie in (0, 1), got {}",
                self.variety_threshold
            ));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be non-negative, got {}", self.alpha));
        }
        if !(self.deposit >= 0.0 && self.deposit.is_finite()) {
            return bad(format!("deposit must be non-negative, got {}", self.deposit));
        }
        if !(self.seed_weight > 0.0 && self.seed_weight.is_finite()) {
            return bad(format!("seed weight must be positive, got {}", self.seed_weight));
        }
        if self.beta != 0.0 {
            return Err(SolveError::Unsupported(
                "a non-zero beta needs a desirability term, which is not defined".into(),
            ));
        }
        Ok(())
    }

    /// Canonical one-line rendering, stable across runs; the source of the
    /// parameter digest written into solution files.
    pub fn canonical(&self) -> String {
        format!(
            "ants={} mu={} p_init={} alpha={} delta={} p_min={} gamma={} psi={} kappa={} h_init={} beta={} max_iter={} time_limit={}",
            self.ants,
            self.evaporation,
            self.initial_pheromone,
            self.alpha,
            self.deposit,
            self.min_pheromone,
            self.stall_limit,
            self.variety_threshold,
            self.kappa_init,
            self.seed_weight,
            self.beta,
            self.max_iterations.map_or("-".to_string(), |v| v.to_string()),
            self.time_limit.map_or("-".to_string(), |v| format!("{}ms", v.as_millis())),
        )
    }
}
