//! Random instance generator for tests, fuzzing and benchmarks.
//!
//! Instances are acyclic by construction (predecessors always have a lower
//! index) and schedulable: each task's requirement is drawn from the skills
//! of some resource, at or below that resource's level.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{ProjectInstance, Resource, Skill, Task};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub tasks: usize,
    pub resources: usize,
    pub relations: usize,
    pub skill_types: usize,
    pub skills_per_resource: usize,
    pub max_level: u32,
    pub durations: (u64, u64),
    pub salaries: (u32, u32),
}

impl GeneratorConfig {
    /// Shape of a benchmark-sized project: `tasks` tasks, `resources`
    /// resources, each owning six of `skill_types` skill types.
    pub fn benchmark(tasks: usize, resources: usize, relations: usize, skill_types: usize) -> Self {
        GeneratorConfig {
            tasks,
            resources,
            relations,
            skill_types,
            skills_per_resource: 6.min(skill_types),
            max_level: 3,
            durations: (5, 60),
            salaries: (10, 60),
        }
    }

    pub fn small(tasks: usize, resources: usize) -> Self {
        GeneratorConfig {
            tasks,
            resources,
            relations: tasks,
            skill_types: 3,
            skills_per_resource: 2,
            max_level: 3,
            durations: (1, 9),
            salaries: (1, 20),
        }
    }
}

pub fn random_instance(config: &GeneratorConfig, seed: u64) -> ProjectInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds: Vec<String> = (0..config.skill_types.max(1)).map(|q| format!("Q{q}")).collect();
    let per_resource = config.skills_per_resource.clamp(1, kinds.len());

    let resources: Vec<Resource> = (0..config.resources.max(1))
        .map(|k| {
            let mut owned = kinds.clone();
            owned.shuffle(&mut rng);
            owned.truncate(per_resource);
            Resource {
                id: format!("R{}", k + 1),
                salary: f64::from(rng.random_range(config.salaries.0..=config.salaries.1)),
                skills: owned
                    .into_iter()
                    .map(|kind| Skill::new(kind, rng.random_range(0..=config.max_level)))
                    .collect(),
                definition_index: k,
            }
        })
        .collect();

    let n = config.tasks.max(1);
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    if n > 1 {
        let max_pairs = n * (n - 1) / 2;
        let target = config.relations.min(max_pairs);
        let mut placed = 0;
        let mut attempts = 0;
        while placed < target && attempts < target * 20 + 100 {
            attempts += 1;
            let b = rng.random_range(1..n);
            let a = rng.random_range(0..b);
            if preds[b].insert(a) {
                placed += 1;
            }
        }
    }

    let tasks = (0..n)
        .map(|j| {
            let owner = &resources[rng.random_range(0..resources.len())];
            let skill = &owner.skills[rng.random_range(0..owner.skills.len())];
            Task {
                id: format!("T{}", j + 1),
                duration: rng.random_range(config.durations.0.max(1)..=config.durations.1.max(1)),
                required_skill: Skill::new(skill.kind.clone(), rng.random_range(0..=skill.level)),
                predecessors: preds[j].iter().map(|&i| format!("T{}", i + 1)).collect(),
                definition_index: j,
            }
        })
        .collect();

    ProjectInstance::new(
        format!("gen_{}_{}_{}", n, resources.len(), seed),
        tasks,
        resources,
        kinds.into_iter().collect(),
    )
    .expect("generated ids are unique and references resolve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn generated_instances_are_valid() {
        for seed in 0..50 {
            let inst = random_instance(&GeneratorConfig::small(12, 4), seed);
            assert!(validate_instance(&inst).is_empty());
        }
        let big = random_instance(&GeneratorConfig::benchmark(100, 10, 27, 9), 1);
        assert_eq!(big.task_count(), 100);
        assert_eq!(big.relation_count(), 27);
        assert!(validate_instance(&big).is_empty());
    }

    #[test]
    fn same_seed_same_instance() {
        let c = GeneratorConfig::small(8, 3);
        assert_eq!(random_instance(&c, 3), random_instance(&c, 3));
    }
}
