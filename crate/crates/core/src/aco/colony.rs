use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SolveError;
use crate::heuristics::ensure_valid;
use crate::model::ProjectInstance;
use crate::scheduling::{build_schedule, definition_order, Assignment, Evaluator, OptimizationMode, Schedule};

use super::surface::{init_surface, select_resource, PheromoneSurface};
use super::AcoParams;

/// Smallest population variety used as a DIFF divisor; keeps the local
/// deposit finite when every ant scores the same.
pub const MIN_VARIETY_DIVISOR: f64 = 0.01;

/// One constructed solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Ant {
    pub path: Assignment,
    pub schedule: Schedule,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateStrategy {
    /// Every ant deposits, the one ranked `pos` leaving `delta / pos`.
    All,
    /// Iteration best and global best deposit `delta` each.
    Elite,
    /// Best or worst ants deposit depending on population variety.
    Diff,
}

impl UpdateStrategy {
    pub const ALL_STRATEGIES: [UpdateStrategy; 3] =
        [UpdateStrategy::All, UpdateStrategy::Elite, UpdateStrategy::Diff];

    pub fn label(self) -> &'static str {
        match self {
            UpdateStrategy::All => "all",
            UpdateStrategy::Elite => "elite",
            UpdateStrategy::Diff => "diff",
        }
    }
}

impl fmt::Display for UpdateStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for UpdateStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(UpdateStrategy::All),
            "elite" => Ok(UpdateStrategy::Elite),
            "diff" => Ok(UpdateStrategy::Diff),
            _ => Err(format!("unknown strategy {s:?} (expected all, elite or diff)")),
        }
    }
}

/// Branch taken by one DIFF update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffBranch {
    /// Variety above threshold: best ants deposit, counter goes up.
    Best,
    /// Low variety with counter left: worst ants deposit, counter goes down.
    Worst,
    /// Low variety but counter exhausted: best ants deposit `delta` each.
    Fallback,
}

/// Outcome of a DIFF update, kept for inspection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffStep {
    pub variety: f64,
    pub branch: DiffBranch,
    /// Worst score was 0, variety taken as 0.
    pub zero_worst: bool,
}

/// Everything the main loop carries between iterations.
#[derive(Debug, Clone)]
pub struct ColonyState {
    pub surface: PheromoneSurface,
    /// Current ants, sorted ascending by score after each update.
    pub ants: Vec<Ant>,
    pub best_local: Option<Ant>,
    pub best_global: Option<Ant>,
    pub worst_local: Option<Ant>,
    pub worst_global: Option<Ant>,
    pub kappa: i64,
    pub iterations_since_improvement: usize,
    pub iteration_count: usize,
}

impl ColonyState {
    pub fn new(surface: PheromoneSurface, params: &AcoParams) -> Self {
        ColonyState {
            surface,
            ants: Vec::new(),
            best_local: None,
            best_global: None,
            worst_local: None,
            worst_global: None,
            kappa: params.kappa_init,
            iterations_since_improvement: 0,
            iteration_count: 0,
        }
    }

    /// Sorts the ants, refreshes the local extremes and folds them into the
    /// global ones. Returns whether the global best improved.
    pub fn absorb(&mut self, mut ants: Vec<Ant>) -> bool {
        // stable: equal scores keep ant index order
        ants.sort_by(|a, b| a.score.total_cmp(&b.score));
        let best = ants.first().cloned();
        let worst = ants.last().cloned();
        self.ants = ants;
        self.best_local = best;
        self.worst_local = worst;

        let improved = match (&self.best_local, &self.best_global) {
            (Some(b), Some(g)) => b.score < g.score,
            (Some(_), None) => true,
            _ => false,
        };
        if improved {
            self.best_global = self.best_local.clone();
            self.iterations_since_improvement = 0;
        } else {
            self.iterations_since_improvement += 1;
        }
        let worse = match (&self.worst_local, &self.worst_global) {
            (Some(w), Some(v)) => w.score > v.score,
            (Some(_), None) => true,
            _ => false,
        };
        if worse {
            self.worst_global = self.worst_local.clone();
        }
        improved
    }
}

/// Rank-weighted deposit: the ant at 1-based position `pos` in `ranked`
/// adds `delta / pos` to each of its edges. `ranked` is best first.
pub fn update_all(surface: &mut PheromoneSurface, ranked: &[Ant], delta: f64) {
    for (i, ant) in ranked.iter().enumerate() {
        surface.deposit_path(&ant.path, delta / (i + 1) as f64);
    }
}

/// Iteration best and global best each add `delta` to their edges.
pub fn update_elite(surface: &mut PheromoneSurface, best_local: &Ant, best_global: &Ant, delta: f64) {
    surface.deposit_path(&best_local.path, delta);
    surface.deposit_path(&best_global.path, delta);
}

/// Population variety `(f_w - f_b) / f_w`, with a flag for `f_w = 0`.
pub fn population_variety(best: f64, worst: f64) -> (f64, bool) {
    if worst == 0.0 {
        (0.0, true)
    } else {
        ((worst - best) / worst, false)
    }
}

/// Variety-driven deposit.
///
/// With variety above the threshold the iteration best receives
/// `delta / variety` and the global best `delta / g`, where `g` is the number
/// of iterations since the last global improvement (at least 1); the counter
/// is incremented. Below the threshold the worst ants receive the same
/// amounts while the counter is non-negative, decrementing it. Once the
/// counter is negative, low variety falls back to `delta` on both best
/// paths.
pub fn update_diff(state: &mut ColonyState, params: &AcoParams) -> Option<DiffStep> {
    let (best_local, worst_local) = (state.best_local.as_ref()?, state.worst_local.as_ref()?);
    let (best_global, worst_global) = (state.best_global.as_ref()?, state.worst_global.as_ref()?);
    let (variety, zero_worst) = population_variety(best_local.score, worst_local.score);
    let delta = params.deposit;
    let local = delta / variety.max(MIN_VARIETY_DIVISOR);
    let global = delta / state.iterations_since_improvement.max(1) as f64;

    let branch = if variety > params.variety_threshold {
        state.surface.deposit_path(&best_local.path, local);
        state.surface.deposit_path(&best_global.path, global);
        state.kappa += 1;
        DiffBranch::Best
    } else if state.kappa >= 0 {
        state.surface.deposit_path(&worst_local.path, local);
        state.surface.deposit_path(&worst_global.path, global);
        state.kappa -= 1;
        DiffBranch::Worst
    } else {
        state.surface.deposit_path(&best_local.path, delta);
        state.surface.deposit_path(&best_global.path, delta);
        DiffBranch::Fallback
    };
    Some(DiffStep {
        variety,
        branch,
        zero_worst,
    })
}

/// Shared per-run context for building ants.
pub(crate) struct Builder<'a> {
    pub instance: &'a ProjectInstance,
    pub evaluator: Evaluator,
    pub order: Vec<usize>,
}

impl<'a> Builder<'a> {
    pub fn new(instance: &'a ProjectInstance, mode: OptimizationMode) -> Self {
        Builder {
            instance,
            evaluator: Evaluator::new(instance, mode),
            order: definition_order(instance),
        }
    }

    pub fn ant(&self, path: Assignment) -> Result<Ant, SolveError> {
        let schedule = build_schedule(self.instance, &path, &self.order)?;
        let score = self.evaluator.evaluate(&schedule, self.instance).score;
        Ok(Ant {
            path,
            schedule,
            score,
        })
    }

    pub fn ant_from_schedule(&self, schedule: Schedule) -> Ant {
        let score = self.evaluator.evaluate(&schedule, self.instance).score;
        Ant {
            path: schedule.assignment().clone(),
            schedule,
            score,
        }
    }

    pub fn random_ant<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Ant, SolveError> {
        let path = (0..self.instance.task_count())
            .map(|j| {
                let capable = self.instance.capable_of(j);
                if capable.is_empty() {
                    Err(SolveError::NoCapableResource(self.instance.task(j).id.clone()))
                } else {
                    Ok(capable[rng.random_range(0..capable.len())])
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.ant(Assignment::new(path))
    }

    pub fn construct<R: Rng + ?Sized>(
        &self,
        surface: &PheromoneSurface,
        alpha: f64,
        rng: &mut R,
    ) -> Result<Ant, SolveError> {
        let path = (0..self.instance.task_count())
            .map(|j| select_resource(j, surface, alpha, rng))
            .collect::<Result<Vec<_>, _>>()?;
        self.ant(Assignment::new(path))
    }
}

/// Builds one ant: a roulette draw per task, then the schedule for the
/// resulting assignment in precedence-repaired definition order.
pub fn construct_solution<R: Rng + ?Sized>(
    instance: &ProjectInstance,
    surface: &PheromoneSurface,
    params: &AcoParams,
    mode: OptimizationMode,
    rng: &mut R,
) -> Result<Ant, SolveError> {
    Builder::new(instance, mode).construct(surface, params.alpha, rng)
}

/// Number of skill-feasible (task, resource) pairs.
pub fn count_possible_assignments(instance: &ProjectInstance) -> u64 {
    (0..instance.task_count())
        .map(|j| instance.capable_of(j).len() as u64)
        .sum()
}

/// Statistics of one colony run.
#[derive(Debug, Clone, PartialEq)]
pub struct ColonyStats {
    pub iterations: usize,
    /// Global-best score after each iteration.
    pub best_scores: Vec<f64>,
    /// Smallest edge value after each iteration's update.
    pub min_pheromone: Vec<f64>,
    pub diff_steps: Vec<DiffStep>,
    pub wall_seconds: f64,
    /// Possible assignments times iterations.
    pub dominant_ops: u64,
    pub timed_out: bool,
}

/// Runs the colony until the global best has not improved for
/// `stall_limit` iterations (or a cap in `params` is hit).
///
/// Iteration 0 evaluates the initial colony: random ants, plus the heuristic
/// ant in place of the first one if `seed` is given. Every later iteration
/// constructs `ants` fresh solutions by roulette. Each iteration then ranks
/// the ants, updates the local and global extremes, evaporates, and lets the
/// strategy deposit.
pub fn run(
    instance: &ProjectInstance,
    params: &AcoParams,
    mode: OptimizationMode,
    strategy: UpdateStrategy,
    seed: Option<&Schedule>,
) -> Result<(Schedule, ColonyStats), SolveError> {
    params.validate()?;
    ensure_valid(instance)?;
    let started = Instant::now();
    let builder = Builder::new(instance, mode);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = ColonyState::new(init_surface(instance, params, seed)?, params);

    let mut colony = Vec::with_capacity(params.ants);
    if let Some(s) = seed {
        colony.push(builder.ant_from_schedule(s.clone()));
    }
    while colony.len() < params.ants {
        colony.push(builder.random_ant(&mut rng)?);
    }

    let mut stats = ColonyStats {
        iterations: 0,
        best_scores: Vec::new(),
        min_pheromone: Vec::new(),
        diff_steps: Vec::new(),
        wall_seconds: 0.0,
        dominant_ops: 0,
        timed_out: false,
    };
    let mut pending = Some(colony);
    loop {
        let ants = match pending.take() {
            Some(initial) => initial,
            None => (0..params.ants)
                .map(|_| builder.construct(&state.surface, params.alpha, &mut rng))
                .collect::<Result<Vec<_>, _>>()?,
        };
        state.absorb(ants);
        state.surface.evaporate(params.evaporation);
        match strategy {
            UpdateStrategy::All => update_all(&mut state.surface, &state.ants, params.deposit),
            UpdateStrategy::Elite => {
                let (b, g) = (state.best_local.as_ref(), state.best_global.as_ref());
                if let (Some(b), Some(g)) = (b, g) {
                    update_elite(&mut state.surface, b, g, params.deposit);
                }
            }
            UpdateStrategy::Diff => {
                if let Some(step) = update_diff(&mut state, params) {
                    stats.diff_steps.push(step);
                }
            }
        }
        state.iteration_count += 1;
        stats.best_scores.push(state.best_global.as_ref().map_or(f64::INFINITY, |a| a.score));
        stats.min_pheromone.push(state.surface.min_value());

        if state.iterations_since_improvement >= params.stall_limit {
            break;
        }
        if params.max_iterations.is_some_and(|cap| state.iteration_count >= cap) {
            break;
        }
        if params.time_limit.is_some_and(|limit| started.elapsed() >= limit) {
            stats.timed_out = true;
            break;
        }
    }

    stats.iterations = state.iteration_count;
    stats.dominant_ops = count_possible_assignments(instance) * stats.iterations as u64;
    stats.wall_seconds = started.elapsed().as_secs_f64();
    let best = state
        .best_global
        .map(|a| a.schedule)
        .expect("a colony of at least one ant always has a global best");
    Ok((best, stats))
}
