//! Priority-rule schedulers: successors-list-size (SLS) and resource salary (RS).
//!
//! Both are deterministic. They serve as standalone baselines and as the
//! seed solutions of the hybrid colony.

use std::fmt;
use std::str::FromStr;

use crate::error::SolveError;
use crate::model::{validate_instance, ProjectInstance};
use crate::scheduling::{
    definition_order, fix_conflicts, precedence_repair, serial_schedule, Assignment, Schedule,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SortOrder {
    Ascending,
    Descending,
}

impl SortOrder {
    pub fn suffix(self) -> &'static str {
        match self {
            SortOrder::Ascending => "asc",
            SortOrder::Descending => "desc",
        }
    }
}

impl FromStr for SortOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "asc" | "a" | "ascending" => Ok(SortOrder::Ascending),
            "desc" | "d" | "descending" => Ok(SortOrder::Descending),
            _ => Err(format!("unknown sort order {s:?} (expected asc or desc)")),
        }
    }
}

/// How the successors list of a task is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuccessorCount {
    /// Tasks listing this one as a direct predecessor.
    #[default]
    Direct,
    /// Every task reachable through precedence edges.
    Transitive,
}

/// A priority rule with its sort direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    SuccessorsListSize(SortOrder),
    ResourceSalary(SortOrder),
}

impl Rule {
    pub fn schedule(self, instance: &ProjectInstance) -> Result<Schedule, SolveError> {
        match self {
            Rule::SuccessorsListSize(order) => sls_schedule(instance, order),
            Rule::ResourceSalary(order) => rs_schedule(instance, order),
        }
    }

    /// Short label such as `sls-desc`.
    pub fn label(self) -> String {
        match self {
            Rule::SuccessorsListSize(o) => format!("sls-{}", o.suffix()),
            Rule::ResourceSalary(o) => format!("rs-{}", o.suffix()),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub(crate) fn ensure_valid(instance: &ProjectInstance) -> Result<(), SolveError> {
    let violations = validate_instance(instance);
    if violations.is_empty() {
        Ok(())
    } else {
        let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(SolveError::InvalidInstance(text.join("; ")))
    }
}

pub fn sls_schedule(instance: &ProjectInstance, order: SortOrder) -> Result<Schedule, SolveError> {
    sls_schedule_with(instance, order, SuccessorCount::Direct)
}

/// Successors-list-size rule.
///
/// Tasks are ranked by successor count (ties by definition order), the
/// ranking is made precedence-consistent, and each task in turn goes to the
/// capable resource that frees up earliest given the tasks already handed
/// to it (ties by resource definition order).
pub fn sls_schedule_with(
    instance: &ProjectInstance,
    order: SortOrder,
    count: SuccessorCount,
) -> Result<Schedule, SolveError> {
    ensure_valid(instance)?;
    let n = instance.task_count();
    let successors: Vec<usize> = (0..n)
        .map(|j| match count {
            SuccessorCount::Direct => instance.successors_of(j).len(),
            SuccessorCount::Transitive => instance.transitive_successor_count(j),
        })
        .collect();
    let mut ranked: Vec<usize> = (0..n).collect();
    match order {
        SortOrder::Ascending => ranked.sort_by_key(|&j| successors[j]),
        SortOrder::Descending => ranked.sort_by_key(|&j| std::cmp::Reverse(successors[j])),
    }
    let task_order = precedence_repair(instance, &ranked);

    let mut free = vec![0u64; instance.resource_count()];
    let mut finish = vec![0u64; n];
    let mut chosen = vec![0usize; n];
    for &j in &task_order {
        let k = instance
            .capable_of(j)
            .iter()
            .copied()
            .min_by_key(|&k| free[k])
            .ok_or_else(|| SolveError::NoCapableResource(instance.task(j).id.clone()))?;
        let ready = instance
            .predecessors_of(j)
            .iter()
            .map(|&i| finish[i])
            .max()
            .unwrap_or(0);
        finish[j] = ready.max(free[k]) + instance.task(j).duration;
        free[k] = finish[j];
        chosen[j] = k;
    }
    place(instance, chosen, &task_order)
}

/// Resource-salary rule.
///
/// Resources are ranked by salary (ties by definition order); tasks are
/// taken in definition order and each goes to the first capable resource in
/// that ranking, placed after the work already given to the resource.
pub fn rs_schedule(instance: &ProjectInstance, order: SortOrder) -> Result<Schedule, SolveError> {
    ensure_valid(instance)?;
    let mut ranked: Vec<usize> = (0..instance.resource_count()).collect();
    let salary = |k: usize| instance.resource(k).salary;
    match order {
        SortOrder::Ascending => ranked.sort_by(|&a, &b| salary(a).total_cmp(&salary(b))),
        SortOrder::Descending => ranked.sort_by(|&a, &b| salary(b).total_cmp(&salary(a))),
    }
    let mut position = vec![0usize; ranked.len()];
    for (p, &k) in ranked.iter().enumerate() {
        position[k] = p;
    }
    let task_order = definition_order(instance);
    let chosen = (0..instance.task_count())
        .map(|j| {
            instance
                .capable_of(j)
                .iter()
                .copied()
                .min_by_key(|&k| position[k])
                .ok_or_else(|| SolveError::NoCapableResource(instance.task(j).id.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    place(instance, chosen, &task_order)
}

/// Serial placement in list order, passed through conflict fixing as a
/// feasibility gate (a no-op on serial output).
fn place(instance: &ProjectInstance, chosen: Vec<usize>, order: &[usize]) -> Result<Schedule, SolveError> {
    let serial = serial_schedule(instance, &Assignment::new(chosen), order)?;
    let fixed = fix_conflicts(&serial, instance);
    debug_assert_eq!(fixed, serial);
    Ok(fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheduling::{total_cost, validate_schedule};
    use crate::testutil::{res, sample, task, types, uniform};

    #[test]
    fn sls_without_successors_uses_definition_order() {
        let inst = uniform(4, 2, &[3, 1, 2, 2], &[]);
        let s = sls_schedule(&inst, SortOrder::Descending).unwrap();
        // T1 -> R1, T2 -> R2, T3 -> R2 (free at 1), T4 -> R2 (free at 3 vs R1 at 3: R1)
        assert_eq!(s.assignment().as_slice(), &[0, 1, 1, 0]);
        assert!(validate_schedule(&s, &inst).is_empty());
        assert_eq!(
            sls_schedule(&inst, SortOrder::Ascending).unwrap(),
            s,
            "all ties: direction is irrelevant"
        );
    }

    #[test]
    fn sls_descending_puts_hubs_first() {
        // T3 has two successors, T1 none
        let inst = uniform(4, 1, &[1], &[(2, 0), (2, 3)]);
        let s = sls_schedule(&inst, SortOrder::Descending).unwrap();
        assert_eq!(s.start(2), 0);
    }

    #[test]
    fn forced_assignment() {
        let resources = vec![res("A", 1.0, &[("X", 1)]), res("B", 9.0, &[("Y", 1)])];
        let tasks = vec![task("t1", 2, ("X", 1), &[]), task("t2", 2, ("Y", 1), &["t1"])];
        let inst = ProjectInstance::new("f", tasks, resources, types(&["X", "Y"])).unwrap();
        for rule in [
            Rule::SuccessorsListSize(SortOrder::Ascending),
            Rule::SuccessorsListSize(SortOrder::Descending),
            Rule::ResourceSalary(SortOrder::Ascending),
            Rule::ResourceSalary(SortOrder::Descending),
        ] {
            let s = rule.schedule(&inst).unwrap();
            assert_eq!(s.assignment().as_slice(), &[0, 1], "{rule}");
        }
    }

    #[test]
    fn rs_respects_skills() {
        // the cheap resource cannot do t2
        let resources = vec![res("cheap", 1.0, &[("X", 1)]), res("dear", 9.0, &[("X", 3)])];
        let tasks = vec![task("t1", 2, ("X", 1), &[]), task("t2", 2, ("X", 2), &[])];
        let inst = ProjectInstance::new("f", tasks, resources, types(&["X"])).unwrap();
        let s = rs_schedule(&inst, SortOrder::Ascending).unwrap();
        assert_eq!(s.assignment().as_slice(), &[0, 1]);
        let d = rs_schedule(&inst, SortOrder::Descending).unwrap();
        assert_eq!(d.assignment().as_slice(), &[1, 1]);
        assert!(total_cost(&s, &inst) < total_cost(&d, &inst));
    }

    #[test]
    fn rs_equal_salaries_cost_is_constant() {
        let mut inst = uniform(3, 3, &[2, 5, 1], &[]);
        let rs: Vec<_> = inst
            .resources()
            .iter()
            .map(|r| res(&r.id, 4.0, &[("Q", 1)]))
            .collect();
        inst = ProjectInstance::new("eq", inst.tasks().to_vec(), rs, types(&["Q"])).unwrap();
        let a = rs_schedule(&inst, SortOrder::Ascending).unwrap();
        assert_eq!(total_cost(&a, &inst), 32.0);
    }

    #[test]
    fn invalid_instance_rejected() {
        let inst = uniform(2, 1, &[0, 1], &[]);
        assert!(matches!(
            sls_schedule(&inst, SortOrder::Ascending),
            Err(SolveError::InvalidInstance(_))
        ));
    }

    #[test]
    fn sample_heuristics_are_feasible_and_repeatable() {
        let inst = sample();
        for rule in [
            Rule::SuccessorsListSize(SortOrder::Descending),
            Rule::ResourceSalary(SortOrder::Ascending),
        ] {
            let first = rule.schedule(&inst).unwrap();
            assert!(validate_schedule(&first, &inst).is_empty());
            for _ in 0..10 {
                assert_eq!(rule.schedule(&inst).unwrap(), first);
            }
        }
    }

    #[test]
    fn transitive_count_is_opt_in() {
        // chain T1 -> T2 -> T3 and a fork T4 -> {T5, T6}:
        // direct counts favour T4, transitive counts tie T1 with T4
        let inst = uniform(6, 1, &[1], &[(0, 1), (1, 2), (3, 4), (3, 5)]);
        let d = sls_schedule_with(&inst, SortOrder::Descending, SuccessorCount::Direct).unwrap();
        assert_eq!(d.start(3), 0);
        let t = sls_schedule_with(&inst, SortOrder::Descending, SuccessorCount::Transitive).unwrap();
        assert_eq!(t.start(0), 0);
    }
}
