use rand::Rng;

use crate::error::{ScheduleError, SolveError};
use crate::model::ProjectInstance;
use crate::scheduling::{Assignment, Schedule};

use super::AcoParams;

/// How much the seed edge of a task outweighs the initial pheromone, per
/// capable resource.
const SEED_BOOST: f64 = 20.0;

/// Pheromone on every (task, capable resource) edge.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneSurface {
    resources: Vec<Vec<usize>>,
    values: Vec<Vec<f64>>,
    floor: f64,
    /// `slot[task][resource]`: position of the resource in the task's edge
    /// list, `usize::MAX` when the resource is not capable.
    slot: Vec<Vec<usize>>,
}

impl PheromoneSurface {
    /// Every edge starts at `value`.
    pub fn uniform(instance: &ProjectInstance, value: f64, floor: f64) -> Self {
        let m = instance.resource_count();
        let resources: Vec<Vec<usize>> = (0..instance.task_count())
            .map(|j| instance.capable_of(j).to_vec())
            .collect();
        let slot = resources
            .iter()
            .map(|list| {
                let mut s = vec![usize::MAX; m];
                for (pos, &k) in list.iter().enumerate() {
                    s[k] = pos;
                }
                s
            })
            .collect();
        let values = resources.iter().map(|l| vec![value; l.len()]).collect();
        PheromoneSurface {
            resources,
            values,
            floor,
            slot,
        }
    }

    pub fn task_count(&self) -> usize {
        self.values.len()
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    /// Capable resources of `task`, aligned with [`Self::values`].
    pub fn resources(&self, task: usize) -> &[usize] {
        &self.resources[task]
    }

    pub fn values(&self, task: usize) -> &[f64] {
        &self.values[task]
    }

    /// Pheromone on the edge, or `None` if the resource cannot do the task.
    pub fn get(&self, task: usize, resource: usize) -> Option<f64> {
        let pos = *self.slot[task].get(resource)?;
        (pos != usize::MAX).then(|| self.values[task][pos])
    }

    pub fn set(&mut self, task: usize, resource: usize, value: f64) -> bool {
        match self.slot[task].get(resource) {
            Some(&pos) if pos != usize::MAX => {
                self.values[task][pos] = value;
                true
            }
            _ => false,
        }
    }

    pub fn add(&mut self, task: usize, resource: usize, amount: f64) {
        let pos = self.slot[task][resource];
        debug_assert!(pos != usize::MAX, "deposit on a missing edge");
        self.values[task][pos] += amount;
    }

    /// Adds `amount` to every edge of the path.
    pub fn deposit_path(&mut self, path: &Assignment, amount: f64) {
        for (j, k) in path.iter() {
            self.add(j, k, amount);
        }
    }

    pub fn total(&self) -> f64 {
        self.values.iter().flatten().sum()
    }

    pub fn min_value(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn edge_count(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    /// Multiplies every value by `1 - rate`, then lifts anything below the
    /// floor back up to it.
    pub fn evaporate(&mut self, rate: f64) {
        let keep = 1.0 - rate;
        let floor = self.floor;
        for v in self.values.iter_mut().flatten() {
            *v = (*v * keep).max(floor);
        }
    }

    /// Roulette probabilities of the task's edges: `p^alpha / sum p^alpha`.
    pub fn probabilities(&self, task: usize, alpha: f64) -> Vec<f64> {
        let weights: Vec<f64> = self.values[task].iter().map(|p| weight(*p, alpha)).collect();
        let sum: f64 = weights.iter().sum();
        weights.iter().map(|w| w / sum).collect()
    }
}

fn weight(p: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        p
    } else {
        p.powf(alpha)
    }
}

/// Fresh surface for a run.
///
/// Without a seed every edge holds the initial pheromone. With a seed
/// schedule, its edges get `seed_weight * initial * capable * 20` and all
/// other edges sit at the floor, which makes the seed edge of every task
/// the overwhelming roulette favourite.
pub fn init_surface(
    instance: &ProjectInstance,
    params: &AcoParams,
    seed: Option<&Schedule>,
) -> Result<PheromoneSurface, SolveError> {
    let Some(seed) = seed else {
        return Ok(PheromoneSurface::uniform(
            instance,
            params.initial_pheromone,
            params.min_pheromone,
        ));
    };
    seed.assignment().check(instance, true)?;
    let mut surface = PheromoneSurface::uniform(instance, params.min_pheromone, params.min_pheromone);
    for (j, k) in seed.assignment().iter() {
        let capable = surface.resources(j).len() as f64;
        let boost = params.seed_weight * params.initial_pheromone * capable * SEED_BOOST;
        if !surface.set(j, k, boost) {
            return Err(ScheduleError::IncapableResource {
                task: instance.task(j).id.clone(),
                resource: instance.resource(k).id.clone(),
            }
            .into());
        }
    }
    Ok(surface)
}

/// Draws one capable resource for `task` with probability proportional to
/// pheromone raised to `alpha`.
pub fn select_resource<R: Rng + ?Sized>(
    task: usize,
    surface: &PheromoneSurface,
    alpha: f64,
    rng: &mut R,
) -> Result<usize, SolveError> {
    let values = surface.values(task);
    let resources = surface.resources(task);
    match values.len() {
        0 => return Err(SolveError::NoCapableResource(format!("#{task}"))),
        1 => return Ok(resources[0]),
        _ => {}
    }
    let total: f64 = values.iter().map(|p| weight(*p, alpha)).sum();
    let mut ticket = rng.random::<f64>() * total;
    for (pos, p) in values.iter().enumerate() {
        ticket -= weight(*p, alpha);
        if ticket < 0.0 {
            return Ok(resources[pos]);
        }
    }
    // rounding left the ticket at the very end of the wheel
    Ok(resources[resources.len() - 1])
}
