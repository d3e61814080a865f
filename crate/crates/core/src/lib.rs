//! Multi-skill resource-constrained project scheduling.
//!
//! Tasks need one skill at a minimum level; each dedicated resource owns a
//! set of skills, earns a salary per time unit and can work on one task at a
//! time. Schedules are scored by a weighted sum of normalised duration and
//! normalised cost.
//!
//! The crate provides:
//!
//! - [`model`]: instances, skill capability, instance validation;
//! - [`scheduling`]: timetable construction, conflict fixing, evaluation;
//! - [`heuristics`]: the SLS and RS priority rules;
//! - [`aco`]: the ant colony with ALL, ELITE and DIFF pheromone updates and
//!   heuristic seeding;
//! - [`io`]: instance, solution and CSV formats;
//! - [`harness`]: repeated experiments and their aggregation.

pub mod aco;
pub mod error;
pub mod generate;
pub mod harness;
pub mod heuristics;
pub mod io;
pub mod model;
pub mod scheduling;

#[cfg(test)]
mod testutil;

pub use aco::{AcoParams, UpdateStrategy};
pub use error::{EvalError, InstanceError, ScheduleError, SolveError};
pub use heuristics::{Rule, SortOrder};
pub use model::{can_perform, validate_instance, ProjectInstance, Resource, Skill, Task};
pub use scheduling::{
    build_schedule, evaluate, fix_conflicts, makespan, total_cost, validate_schedule, Assignment,
    EvalResult, OptimizationMode, Schedule,
};
