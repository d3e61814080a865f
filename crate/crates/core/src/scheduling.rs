//! From an assignment to a timetable, and from a timetable to a score.
//!
//! [`build_schedule`] places every task at the earliest time its
//! predecessors allow and then hands the tentative timetable to
//! [`fix_conflicts`], which resolves overlaps on dedicated resources: of two
//! overlapping tasks the one starting later is moved to the finish of the
//! other, equal starts keep the earlier-defined task in place, and every move
//! is propagated to successors.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use crate::error::{EvalError, ScheduleError};
use crate::model::{can_perform, ProjectInstance};

/// Resource index chosen for each task, indexed by task position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(resources: Vec<usize>) -> Self {
        Assignment(resources)
    }

    pub fn resource_of(&self, task: usize) -> usize {
        self.0[task]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `(task, resource)` pairs in task order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied().enumerate()
    }

    /// Checks totality and resource indices; with `skills` also capability.
    pub fn check(&self, instance: &ProjectInstance, skills: bool) -> Result<(), ScheduleError> {
        if self.0.len() != instance.task_count() {
            return Err(ScheduleError::AssignmentNotTotal {
                expected: instance.task_count(),
                got: self.0.len(),
            });
        }
        for (j, k) in self.iter() {
            let task = instance.task(j);
            if k >= instance.resource_count() {
                return Err(ScheduleError::UnknownResource {
                    task: task.id.clone(),
                    resource: k,
                });
            }
            if skills && !can_perform(instance.resource(k), task) {
                return Err(ScheduleError::IncapableResource {
                    task: task.id.clone(),
                    resource: instance.resource(k).id.clone(),
                });
            }
        }
        Ok(())
    }
}

/// A timetable: who does each task and when.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    assignment: Assignment,
    start: Vec<u64>,
    finish: Vec<u64>,
}

impl Schedule {
    /// Assembles a schedule without checking it. Use [`validate_schedule`]
    /// to find out whether the result is feasible.
    pub fn from_parts(assignment: Assignment, start: Vec<u64>, finish: Vec<u64>) -> Self {
        Schedule {
            assignment,
            start,
            finish,
        }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn start(&self, task: usize) -> u64 {
        self.start[task]
    }

    pub fn finish(&self, task: usize) -> u64 {
        self.finish[task]
    }

    pub fn starts(&self) -> &[u64] {
        &self.start
    }

    pub fn finishes(&self) -> &[u64] {
        &self.finish
    }

    pub fn len(&self) -> usize {
        self.start.len()
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_empty()
    }
}

/// Finish time of the last task; the project starts at 0.
pub fn makespan(schedule: &Schedule) -> u64 {
    schedule.finish.iter().copied().max().unwrap_or(0)
}

/// Sum over tasks of duration times the salary of the assigned resource.
pub fn total_cost(schedule: &Schedule, instance: &ProjectInstance) -> f64 {
    assignment_cost(&schedule.assignment, instance)
}

pub(crate) fn assignment_cost(assignment: &Assignment, instance: &ProjectInstance) -> f64 {
    assignment
        .iter()
        .map(|(j, k)| instance.task(j).duration as f64 * instance.resource(k).salary)
        .sum()
}

/// Checks that `order` is a permutation respecting precedence.
pub fn check_order(instance: &ProjectInstance, order: &[usize]) -> Result<(), ScheduleError> {
    let n = instance.task_count();
    if order.len() != n {
        return Err(ScheduleError::OrderNotPermutation);
    }
    let mut position = vec![usize::MAX; n];
    for (pos, &j) in order.iter().enumerate() {
        if j >= n || position[j] != usize::MAX {
            return Err(ScheduleError::OrderNotPermutation);
        }
        position[j] = pos;
    }
    for &j in order {
        for &i in instance.predecessors_of(j) {
            if position[i] > position[j] {
                return Err(ScheduleError::OrderViolatesPrecedence {
                    task: instance.task(j).id.clone(),
                    predecessor: instance.task(i).id.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Stable topological sort of a priority list: at each step the
/// highest-ranked task whose predecessors are all placed comes next.
///
/// `ranked` must be a permutation of task indices and the precedence graph
/// acyclic; tasks left on a cycle are appended in rank order.
pub fn precedence_repair(instance: &ProjectInstance, ranked: &[usize]) -> Vec<usize> {
    let n = instance.task_count();
    let mut rank = vec![0usize; n];
    for (pos, &j) in ranked.iter().enumerate() {
        rank[j] = pos;
    }
    let mut indegree: Vec<usize> = (0..n).map(|j| instance.predecessors_of(j).len()).collect();
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
        .filter(|&j| indegree[j] == 0)
        .map(|j| Reverse((rank[j], j)))
        .collect();
    let mut out = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while let Some(Reverse((_, j))) = ready.pop() {
        out.push(j);
        placed[j] = true;
        for &s in instance.successors_of(j) {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                ready.push(Reverse((rank[s], s)));
            }
        }
    }
    if out.len() < n {
        out.extend(ranked.iter().copied().filter(|&j| !placed[j]));
    }
    out
}

/// Definition order, repaired so that predecessors come first.
pub fn definition_order(instance: &ProjectInstance) -> Vec<usize> {
    let identity: Vec<usize> = (0..instance.task_count()).collect();
    precedence_repair(instance, &identity)
}

/// Builds a feasible timetable for `assignment`.
///
/// Tasks are visited in `task_order`, which must list predecessors first.
/// Each gets a tentative start at the latest finish of its predecessors
/// (0 without predecessors); overlaps on a resource are then resolved by
/// [`fix_conflicts`].
pub fn build_schedule(
    instance: &ProjectInstance,
    assignment: &Assignment,
    task_order: &[usize],
) -> Result<Schedule, ScheduleError> {
    assignment.check(instance, true)?;
    check_order(instance, task_order)?;
    let n = instance.task_count();
    let mut start = vec![0u64; n];
    let mut finish = vec![0u64; n];
    for &j in task_order {
        let s = instance
            .predecessors_of(j)
            .iter()
            .map(|&i| finish[i])
            .max()
            .unwrap_or(0);
        start[j] = s;
        finish[j] = s + instance.task(j).duration;
    }
    let tentative = Schedule {
        assignment: assignment.clone(),
        start,
        finish,
    };
    Ok(fix_conflicts(&tentative, instance))
}

/// Serial list scheduling: tasks in `task_order` are appended to their
/// resource, each starting once its predecessors are done and the resource
/// has finished everything handed to it before.
///
/// The result is feasible by construction and is a fixed point of
/// [`fix_conflicts`].
pub fn serial_schedule(
    instance: &ProjectInstance,
    assignment: &Assignment,
    task_order: &[usize],
) -> Result<Schedule, ScheduleError> {
    assignment.check(instance, true)?;
    check_order(instance, task_order)?;
    let n = instance.task_count();
    let mut free = vec![0u64; instance.resource_count()];
    let mut start = vec![0u64; n];
    let mut finish = vec![0u64; n];
    for &j in task_order {
        let k = assignment.resource_of(j);
        let ready = instance
            .predecessors_of(j)
            .iter()
            .map(|&i| finish[i])
            .max()
            .unwrap_or(0);
        start[j] = ready.max(free[k]);
        finish[j] = start[j] + instance.task(j).duration;
        free[k] = finish[j];
    }
    Ok(Schedule {
        assignment: assignment.clone(),
        start,
        finish,
    })
}

/// Resolves every overlap on a resource by shifting tasks later.
///
/// Tasks are committed in order of their effective start (current start,
/// pushed past committed predecessors and past the last committed task on the
/// same resource), ties going to the lower definition index. A committed
/// task never moves again, so the task that starts earlier keeps its slot and
/// the other one is shifted to its finish; successors inherit every shift.
/// Starts only ever increase, so a feasible schedule comes back unchanged.
///
/// The input should already respect precedence; starts violating it are
/// pushed forward as a side effect.
pub fn fix_conflicts(schedule: &Schedule, instance: &ProjectInstance) -> Schedule {
    let n = instance.task_count();
    let assignment = &schedule.assignment;
    let mut candidate: Vec<u64> = schedule.start.clone();
    let mut pending: Vec<usize> = (0..n).map(|j| instance.predecessors_of(j).len()).collect();
    let mut resource_free = vec![0u64; instance.resource_count()];
    let mut start = vec![0u64; n];
    let mut finish = vec![0u64; n];
    let mut committed = vec![false; n];

    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::with_capacity(n);
    for j in 0..n {
        if pending[j] == 0 {
            let eff = candidate[j].max(resource_free[assignment.resource_of(j)]);
            heap.push(Reverse((eff, j)));
        }
    }
    let mut done = 0;
    while let Some(Reverse((key, j))) = heap.pop() {
        if committed[j] {
            continue;
        }
        let r = assignment.resource_of(j);
        let eff = candidate[j].max(resource_free[r]);
        if eff > key {
            // resource got busier since this entry was queued
            heap.push(Reverse((eff, j)));
            continue;
        }
        committed[j] = true;
        done += 1;
        start[j] = eff;
        finish[j] = eff + instance.task(j).duration;
        resource_free[r] = finish[j];
        for &s in instance.successors_of(j) {
            candidate[s] = candidate[s].max(finish[j]);
            pending[s] -= 1;
            if pending[s] == 0 {
                let eff = candidate[s].max(resource_free[assignment.resource_of(s)]);
                heap.push(Reverse((eff, s)));
            }
        }
    }
    if done < n {
        // precedence cycle: leave the unreachable tasks where they were
        for j in (0..n).filter(|&j| !committed[j]) {
            start[j] = schedule.start[j];
            finish[j] = schedule.finish[j];
        }
    }
    Schedule {
        assignment: assignment.clone(),
        start,
        finish,
    }
}

/// Weight of the duration component in the evaluation function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationMode {
    w_tau: f64,
}

impl OptimizationMode {
    pub const DURATION: OptimizationMode = OptimizationMode { w_tau: 1.0 };
    pub const BALANCED: OptimizationMode = OptimizationMode { w_tau: 0.5 };
    pub const COST: OptimizationMode = OptimizationMode { w_tau: 0.0 };

    pub fn with_weight(w_tau: f64) -> Option<Self> {
        (0.0..=1.0).contains(&w_tau).then_some(OptimizationMode { w_tau })
    }

    pub fn duration_weight(&self) -> f64 {
        self.w_tau
    }

    pub fn is_duration(&self) -> bool {
        self.w_tau == 1.0
    }

    pub fn is_cost(&self) -> bool {
        self.w_tau == 0.0
    }

    pub fn label(&self) -> String {
        if self.w_tau == 1.0 {
            "do".into()
        } else if self.w_tau == 0.5 {
            "bo".into()
        } else if self.w_tau == 0.0 {
            "co".into()
        } else {
            format!("w{}", self.w_tau)
        }
    }
}

impl fmt::Display for OptimizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for OptimizationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "do" => Ok(Self::DURATION),
            "bo" => Ok(Self::BALANCED),
            "co" => Ok(Self::COST),
            other => other
                .strip_prefix('w')
                .and_then(|w| w.parse::<f64>().ok())
                .and_then(Self::with_weight)
                .ok_or_else(|| format!("unknown mode {s:?} (expected do, bo or co)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub duration: u64,
    pub cost: f64,
    pub f_tau: f64,
    pub f_cost: f64,
    pub score: f64,
    /// Set when all salaries are equal and `f_cost` was forced to 0.
    pub degenerate_cost: bool,
}

/// Normalisation constants of an instance, computed once per run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    mode: OptimizationMode,
    tau_max: f64,
    cost_range: f64,
}

impl Evaluator {
    pub fn new(instance: &ProjectInstance, mode: OptimizationMode) -> Self {
        let work = instance.serial_duration() as f64;
        let (lo, hi) = instance
            .resources()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r.salary), hi.max(r.salary))
            });
        // skill constraints deliberately ignored for both bounds
        let c_min = work * lo;
        let c_max = work * hi;
        Evaluator {
            mode,
            tau_max: work,
            cost_range: if hi > lo { c_max - c_min } else { 0.0 },
        }
    }

    pub fn mode(&self) -> OptimizationMode {
        self.mode
    }

    pub fn is_degenerate(&self) -> bool {
        self.cost_range == 0.0
    }

    pub fn score_of(&self, duration: u64, cost: f64) -> EvalResult {
        let f_tau = if self.tau_max > 0.0 {
            duration as f64 / self.tau_max
        } else {
            0.0
        };
        let degenerate = self.is_degenerate();
        let f_cost = if degenerate { 0.0 } else { cost / self.cost_range };
        let w = self.mode.w_tau;
        let score = if w == 1.0 {
            f_tau
        } else if w == 0.0 {
            f_cost
        } else {
            w * f_tau + (1.0 - w) * f_cost
        };
        EvalResult {
            duration,
            cost,
            f_tau,
            f_cost,
            score,
            degenerate_cost: degenerate,
        }
    }

    pub fn evaluate(&self, schedule: &Schedule, instance: &ProjectInstance) -> EvalResult {
        self.score_of(makespan(schedule), total_cost(schedule, instance))
    }
}

/// Scores a schedule: `w * tau / tau_max + (1 - w) * cost / (c_max - c_min)`.
/// Lower is better. All-equal salaries yield `f_cost = 0` with
/// `degenerate_cost` set; use [`evaluate_strict`] to get an error instead.
pub fn evaluate(
    schedule: &Schedule,
    instance: &ProjectInstance,
    mode: OptimizationMode,
) -> EvalResult {
    Evaluator::new(instance, mode).evaluate(schedule, instance)
}

pub fn evaluate_strict(
    schedule: &Schedule,
    instance: &ProjectInstance,
    mode: OptimizationMode,
) -> Result<EvalResult, EvalError> {
    let evaluator = Evaluator::new(instance, mode);
    if evaluator.is_degenerate() {
        return Err(EvalError::DegenerateCostRange);
    }
    Ok(evaluator.evaluate(schedule, instance))
}

/// A broken feasibility constraint of a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleViolation {
    /// Wrong number of entries, or a task mapped to a resource that does not exist.
    Assignment { task: String },
    Duration { task: String },
    Precedence { task: String, predecessor: String },
    Skill { task: String, resource: String },
    Overlap { resource: String, first: String, second: String },
}

impl ScheduleViolation {
    pub fn rule(&self) -> &'static str {
        match self {
            ScheduleViolation::Assignment { .. } => "single-assignment",
            ScheduleViolation::Duration { .. } => "non-preemption",
            ScheduleViolation::Precedence { .. } => "precedence",
            ScheduleViolation::Skill { .. } => "skill",
            ScheduleViolation::Overlap { .. } => "resource-overlap",
        }
    }
}

impl fmt::Display for ScheduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.rule())?;
        match self {
            ScheduleViolation::Assignment { task } => {
                write!(f, "task {task} is not assigned to exactly one resource")
            }
            ScheduleViolation::Duration { task } => {
                write!(f, "task {task} does not run for exactly its duration")
            }
            ScheduleViolation::Precedence { task, predecessor } => {
                write!(f, "task {task} starts before predecessor {predecessor} finishes")
            }
            ScheduleViolation::Skill { task, resource } => {
                write!(f, "resource {resource} cannot perform task {task}")
            }
            ScheduleViolation::Overlap {
                resource,
                first,
                second,
            } => write!(f, "resource {resource} runs {first} and {second} at the same time"),
        }
    }
}

/// Lists every constraint the schedule breaks; empty means feasible.
pub fn validate_schedule(schedule: &Schedule, instance: &ProjectInstance) -> Vec<ScheduleViolation> {
    let n = instance.task_count();
    let mut out = Vec::new();
    let tasks = instance.tasks();
    if schedule.assignment.len() != n || schedule.start.len() != n || schedule.finish.len() != n {
        let covered = schedule.assignment.len().min(schedule.start.len()).min(schedule.finish.len());
        for t in tasks.iter().skip(covered) {
            out.push(ScheduleViolation::Assignment { task: t.id.clone() });
        }
        if covered < n {
            return out;
        }
    }
    let mut usable = vec![true; n];
    for (j, k) in schedule.assignment.iter().take(n) {
        if k >= instance.resource_count() {
            out.push(ScheduleViolation::Assignment {
                task: tasks[j].id.clone(),
            });
            usable[j] = false;
        } else if !can_perform(instance.resource(k), &tasks[j]) {
            out.push(ScheduleViolation::Skill {
                task: tasks[j].id.clone(),
                resource: instance.resource(k).id.clone(),
            });
        }
    }
    for j in 0..n {
        if schedule.finish[j] != schedule.start[j] + tasks[j].duration {
            out.push(ScheduleViolation::Duration {
                task: tasks[j].id.clone(),
            });
        }
        for &i in instance.predecessors_of(j) {
            if schedule.finish[i] > schedule.start[j] {
                out.push(ScheduleViolation::Precedence {
                    task: tasks[j].id.clone(),
                    predecessor: tasks[i].id.clone(),
                });
            }
        }
    }
    let mut by_resource: Vec<Vec<usize>> = vec![Vec::new(); instance.resource_count()];
    for j in (0..n).filter(|&j| usable[j]) {
        by_resource[schedule.assignment.resource_of(j)].push(j);
    }
    for (k, list) in by_resource.iter_mut().enumerate() {
        list.sort_by_key(|&j| (schedule.start[j], j));
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                if schedule.start[j] >= schedule.finish[i] {
                    break;
                }
                out.push(ScheduleViolation::Overlap {
                    resource: instance.resource(k).id.clone(),
                    first: tasks[i].id.clone(),
                    second: tasks[j].id.clone(),
                });
            }
        }
    }
    out
}
