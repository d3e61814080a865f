use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::aco::{self, count_possible_assignments, AcoParams, ColonyStats, UpdateStrategy};
use crate::error::SolveError;
use crate::heuristics::{Rule, SortOrder};
use crate::model::ProjectInstance;
use crate::scheduling::{EvalResult, Evaluator, OptimizationMode, Schedule};

/// What produces a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    /// The mode's own priority rule: SLS(D) for DO, RS(A) for CO.
    Heuristic,
    /// A fixed priority rule in any mode.
    Rule(Rule),
    Aco,
    /// Colony seeded with the mode's heuristic schedule.
    HAntCo,
}

impl SolverKind {
    pub fn label(self) -> String {
        match self {
            SolverKind::Heuristic => "heuristic".into(),
            SolverKind::Rule(r) => r.label(),
            SolverKind::Aco => "aco".into(),
            SolverKind::HAntCo => "hantco".into(),
        }
    }

    pub fn is_stochastic(self) -> bool {
        matches!(self, SolverKind::Aco | SolverKind::HAntCo)
    }

    /// Whether the solver is defined for `mode`. The mode-driven heuristic
    /// and the hybrid exist only for DO and CO.
    pub fn supports(self, mode: OptimizationMode) -> bool {
        match self {
            SolverKind::Heuristic | SolverKind::HAntCo => seed_rule(mode).is_some(),
            _ => true,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "heuristic" => return Ok(SolverKind::Heuristic),
            "aco" => return Ok(SolverKind::Aco),
            "hantco" => return Ok(SolverKind::HAntCo),
            _ => {}
        }
        let unknown = || format!("unknown solver {s:?} (expected heuristic, sls-asc, sls-desc, rs-asc, rs-desc, aco or hantco)");
        let (rule, order) = lower.split_once('-').ok_or_else(unknown)?;
        let order: SortOrder = order.parse().map_err(|_| unknown())?;
        match rule {
            "sls" => Ok(SolverKind::Rule(Rule::SuccessorsListSize(order))),
            "rs" => Ok(SolverKind::Rule(Rule::ResourceSalary(order))),
            _ => Err(unknown()),
        }
    }
}

/// Heuristic paired with a mode: SLS(D) for DO, RS(A) for CO, none
/// otherwise.
pub fn seed_rule(mode: OptimizationMode) -> Option<Rule> {
    if mode.is_duration() {
        Some(Rule::SuccessorsListSize(SortOrder::Descending))
    } else if mode.is_cost() {
        Some(Rule::ResourceSalary(SortOrder::Ascending))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest {
    pub solver: SolverKind,
    pub mode: OptimizationMode,
    /// Ignored by heuristic solvers.
    pub strategy: UpdateStrategy,
    pub params: AcoParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub schedule: Schedule,
    pub eval: EvalResult,
    /// Colony iterations; a heuristic counts as one pass.
    pub iterations: usize,
    pub dominant_ops: u64,
    pub wall_seconds: f64,
    /// Rule that built the schedule or the colony seed.
    pub rule: Option<Rule>,
    pub colony: Option<ColonyStats>,
}

/// Runs one solver on one instance.
pub fn solve(instance: &ProjectInstance, request: &SolveRequest) -> Result<SolveOutcome, SolveError> {
    let started = Instant::now();
    let mode = request.mode;
    let unsupported = || {
        SolveError::Unsupported(format!(
            "solver {} is only defined for the do and co modes, not {mode}",
            request.solver
        ))
    };
    let evaluator = Evaluator::new(instance, mode);
    let heuristic = |rule: Rule| -> Result<SolveOutcome, SolveError> {
        let schedule = rule.schedule(instance)?;
        Ok(SolveOutcome {
            eval: evaluator.evaluate(&schedule, instance),
            schedule,
            iterations: 1,
            dominant_ops: count_possible_assignments(instance),
            wall_seconds: started.elapsed().as_secs_f64(),
            rule: Some(rule),
            colony: None,
        })
    };
    let colony = |seed: Option<(Rule, Schedule)>| -> Result<SolveOutcome, SolveError> {
        let (rule, seed) = seed.unzip();
        let (schedule, stats) = aco::run(instance, &request.params, mode, request.strategy, seed.as_ref())?;
        Ok(SolveOutcome {
            eval: evaluator.evaluate(&schedule, instance),
            schedule,
            iterations: stats.iterations,
            dominant_ops: stats.dominant_ops,
            wall_seconds: started.elapsed().as_secs_f64(),
            rule,
            colony: Some(stats),
        })
    };
    match request.solver {
        SolverKind::Heuristic => heuristic(seed_rule(mode).ok_or_else(unsupported)?),
        SolverKind::Rule(rule) => heuristic(rule),
        SolverKind::Aco => colony(None),
        SolverKind::HAntCo => {
            let rule = seed_rule(mode).ok_or_else(unsupported)?;
            let seed = rule.schedule(instance)?;
            colony(Some((rule, seed)))
        }
    }
}
