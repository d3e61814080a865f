//! Repeated experiments: plans, cell execution, aggregation and the
//! hybrid-versus-seed comparison.

mod plan;
mod solve;

use rayon::prelude::*;

pub use crate::io::{Aggregate, RunStats};
pub use plan::{resolve_instance_path, ExperimentPlan, ParamOverrides, PlanError, INSTANCE_DIR_VAR};
pub use solve::{seed_rule, solve, SolveOutcome, SolveRequest, SolverKind};

use crate::aco::{AcoParams, UpdateStrategy};
use crate::io::{aggregate_runs, load_instance};
use crate::model::ProjectInstance;
use crate::scheduling::{validate_schedule, OptimizationMode};

/// One unit of work: a solver run with fixed inputs.
#[derive(Debug, Clone, PartialEq)]
struct Cell {
    instance: usize,
    solver: SolverKind,
    mode: OptimizationMode,
    strategy: Option<UpdateStrategy>,
    seed: Option<u64>,
}

/// A cell that produced no result.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub instance: String,
    pub solver: String,
    pub mode: String,
    pub strategy: String,
    pub seed: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanReport {
    /// Successful runs in plan order.
    pub runs: Vec<RunStats>,
    pub aggregates: Vec<Aggregate>,
    pub failures: Vec<CellFailure>,
    /// Human-readable trace, one entry per cell or skipped combination.
    pub log: Vec<String>,
}

fn instance_label(path: &std::path::Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs every (instance, solver, mode, strategy, repetition) cell of the
/// plan on up to `workers` threads.
///
/// Deterministic solvers run once per (instance, mode) with strategy `-`.
/// Combinations a solver does not define (the mode heuristic or the hybrid
/// under BO) are skipped and logged. Failures are collected and the plan
/// carries on. Output order is plan order whatever the worker count.
pub fn execute_plan(plan: &ExperimentPlan, workers: usize) -> PlanReport {
    let mut log = Vec::new();
    let mut failures = Vec::new();
    let mut loaded: Vec<Option<ProjectInstance>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for path in &plan.instances {
        let label = instance_label(path);
        match load_instance(path) {
            Ok(inst) => loaded.push(Some(inst)),
            Err(e) => {
                log.push(format!("error instance={label} path={} message={e}", path.display()));
                failures.push(CellFailure {
                    instance: label.clone(),
                    solver: "-".into(),
                    mode: "-".into(),
                    strategy: "-".into(),
                    seed: None,
                    message: e.to_string(),
                });
                loaded.push(None);
            }
        }
        labels.push(label);
    }

    let mut cells = Vec::new();
    for (i, inst) in loaded.iter().enumerate() {
        if inst.is_none() {
            continue;
        }
        for &solver in &plan.solvers {
            for &mode in &plan.modes {
                if !solver.supports(mode) {
                    log.push(format!("skip instance={} solver={solver} mode={mode}", labels[i]));
                    continue;
                }
                if !solver.is_stochastic() {
                    cells.push(Cell {
                        instance: i,
                        solver,
                        mode,
                        strategy: None,
                        seed: None,
                    });
                    continue;
                }
                for &strategy in &plan.strategies {
                    for rep in 0..plan.repetitions {
                        cells.push(Cell {
                            instance: i,
                            solver,
                            mode,
                            strategy: Some(strategy),
                            seed: Some(plan.seed_for(rep)),
                        });
                    }
                }
            }
        }
    }

    let run_cell = |cell: &Cell| -> Result<RunStats, String> {
        let inst = loaded[cell.instance].as_ref().expect("cells only reference loaded instances");
        let request = SolveRequest {
            solver: cell.solver,
            mode: cell.mode,
            strategy: cell.strategy.unwrap_or(UpdateStrategy::All),
            params: plan.params.clone().with_seed(cell.seed.unwrap_or(0)),
        };
        let out = solve(inst, &request).map_err(|e| e.to_string())?;
        let violations = validate_schedule(&out.schedule, inst);
        if let Some(v) = violations.first() {
            return Err(format!("infeasible schedule: {v}"));
        }
        Ok(RunStats {
            instance: labels[cell.instance].clone(),
            solver: cell.solver.label(),
            mode: cell.mode.label(),
            strategy: cell.strategy.map_or("-".into(), |s| s.label().to_string()),
            seed: cell.seed,
            days: out.eval.duration,
            cost: out.eval.cost,
            score: out.eval.score,
            iterations: out.iterations,
            dominant_ops: out.dominant_ops,
            wall_seconds: out.wall_seconds,
        })
    };

    let results: Vec<Result<RunStats, String>> = match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(|| cells.par_iter().map(run_cell).collect()),
        Err(_) => cells.iter().map(run_cell).collect(),
    };

    let mut runs = Vec::new();
    for (cell, result) in cells.iter().zip(results) {
        let strategy = cell.strategy.map_or("-".to_string(), |s| s.label().to_string());
        let seed = cell.seed.map_or("-".to_string(), |s| s.to_string());
        let head = format!(
            "instance={} solver={} mode={} strategy={strategy} seed={seed}",
            labels[cell.instance], cell.solver, cell.mode
        );
        match result {
            Ok(r) => {
                log.push(format!(
                    "ok {head} days={} cost={} score={:.6} iters={} wall={:.3}s",
                    r.days,
                    crate::io::format_number(r.cost),
                    r.score,
                    r.iterations,
                    r.wall_seconds
                ));
                runs.push(r);
            }
            Err(message) => {
                log.push(format!("error {head} message={message}"));
                failures.push(CellFailure {
                    instance: labels[cell.instance].clone(),
                    solver: cell.solver.label(),
                    mode: cell.mode.label(),
                    strategy,
                    seed: cell.seed,
                    message,
                });
            }
        }
    }

    PlanReport {
        aggregates: aggregate_runs(&runs),
        runs,
        failures,
        log,
    }
}

/// Hybrid result against its seed heuristic for one repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedMargin {
    pub seed: u64,
    pub hybrid_score: f64,
    /// Seed score minus hybrid score; negative would mean the hybrid lost.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedComparison {
    pub instance: String,
    pub mode: OptimizationMode,
    pub heuristic_score: f64,
    pub margins: Vec<SeedMargin>,
    /// Repetitions where the hybrid scored worse than its seed.
    pub violations: Vec<u64>,
    /// Runs that failed outright.
    pub errors: Vec<String>,
}

/// Runs the hybrid `repetitions` times (seeds `base_seed + i`) and compares
/// each result with the heuristic schedule it was seeded from.
pub fn compare_vs_seed(
    instance: &ProjectInstance,
    mode: OptimizationMode,
    strategy: UpdateStrategy,
    params: &AcoParams,
    repetitions: usize,
    base_seed: u64,
) -> Result<SeedComparison, crate::error::SolveError> {
    let rule = seed_rule(mode).ok_or_else(|| {
        crate::error::SolveError::Unsupported(format!("no seed heuristic for mode {mode}"))
    })?;
    let heuristic = solve(
        instance,
        &SolveRequest {
            solver: SolverKind::Rule(rule),
            mode,
            strategy,
            params: params.clone(),
        },
    )?;
    let mut report = SeedComparison {
        instance: instance.name().to_string(),
        mode,
        heuristic_score: heuristic.eval.score,
        margins: Vec::new(),
        violations: Vec::new(),
        errors: Vec::new(),
    };
    for i in 0..repetitions {
        let seed = base_seed.wrapping_add(i as u64);
        let request = SolveRequest {
            solver: SolverKind::HAntCo,
            mode,
            strategy,
            params: params.clone().with_seed(seed),
        };
        match solve(instance, &request) {
            Ok(out) => {
                let margin = heuristic.eval.score - out.eval.score;
                if margin < 0.0 {
                    report.violations.push(seed);
                }
                report.margins.push(SeedMargin {
                    seed,
                    hybrid_score: out.eval.score,
                    margin,
                });
            }
            Err(e) => report.errors.push(format!("seed {seed}: {e}")),
        }
    }
    Ok(report)
}
