//! Ant colony over task-to-resource assignments.
//!
//! The surface holds one pheromone value per skill-feasible edge. Each ant
//! picks a resource for every task by roulette, the assignment is turned
//! into a timetable by [`crate::scheduling::build_schedule`], and the
//! chosen [`UpdateStrategy`] decides which ants reinforce their paths.
//! Seeding the surface with a heuristic schedule gives the hybrid variant.

mod colony;
mod params;
mod surface;

pub use colony::{
    construct_solution, count_possible_assignments, population_variety, run, update_all,
    update_diff, update_elite, Ant, ColonyState, ColonyStats, DiffBranch, DiffStep,
    UpdateStrategy, MIN_VARIETY_DIVISOR,
};
pub use params::AcoParams;
pub use surface::{init_surface, select_resource, PheromoneSurface};
