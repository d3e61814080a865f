//! Domain types for multi-skill project instances.
//!
//! A [`ProjectInstance`] owns its tasks and resources in definition order and
//! precomputes the index tables every solver needs: predecessor and successor
//! lists, and for each task the resources able to perform it. Instances are
//! immutable once built, so they can be shared freely between threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::InstanceError;

/// A skill type together with a familiarity level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Skill {
    pub kind: String,
    pub level: u32,
}

impl Skill {
    pub fn new(kind: impl Into<String>, level: u32) -> Self {
        Skill {
            kind: kind.into(),
            level,
        }
    }
}

impl fmt::Display for Skill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.level)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: String,
    pub duration: u64,
    pub required_skill: Skill,
    /// Predecessor ids in the order they were listed.
    pub predecessors: Vec<String>,
    /// Position of the task in the instance definition.
    pub definition_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resource {
    pub id: String,
    /// Rate paid per time unit of work.
    pub salary: f64,
    pub skills: Vec<Skill>,
    pub definition_index: usize,
}

impl Resource {
    pub fn skill_level(&self, kind: &str) -> Option<u32> {
        self.skills
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.level)
            .max()
    }
}

/// True iff `resource` owns the task's required skill type at the required
/// level or higher.
pub fn can_perform(resource: &Resource, task: &Task) -> bool {
    resource
        .skills
        .iter()
        .any(|s| s.kind == task.required_skill.kind && s.level >= task.required_skill.level)
}

/// A project: tasks, dedicated resources and the skill types they refer to.
#[derive(Debug, Clone)]
pub struct ProjectInstance {
    name: String,
    tasks: Vec<Task>,
    resources: Vec<Resource>,
    skill_types: BTreeSet<String>,
    predecessors: Vec<Vec<usize>>,
    successors: Vec<Vec<usize>>,
    capable: Vec<Vec<usize>>,
    task_lookup: HashMap<String, usize>,
    resource_lookup: HashMap<String, usize>,
}

impl PartialEq for ProjectInstance {
    fn eq(&self, other: &Self) -> bool {
        // name is a label, not part of the instance
        self.tasks == other.tasks
            && self.resources == other.resources
            && self.skill_types == other.skill_types
    }
}

impl ProjectInstance {
    /// Builds an instance and resolves all id references.
    ///
    /// Only structural problems are rejected here (duplicate ids, predecessors
    /// that name no task). Semantic problems such as zero durations or cycles
    /// are reported by [`validate_instance`] so they can be listed together.
    /// `definition_index` fields are overwritten with the vector positions.
    pub fn new(
        name: impl Into<String>,
        mut tasks: Vec<Task>,
        mut resources: Vec<Resource>,
        skill_types: BTreeSet<String>,
    ) -> Result<Self, InstanceError> {
        let mut task_lookup = HashMap::with_capacity(tasks.len());
        for (i, t) in tasks.iter_mut().enumerate() {
            t.definition_index = i;
            if task_lookup.insert(t.id.clone(), i).is_some() {
                return Err(InstanceError::DuplicateTask(t.id.clone()));
            }
        }
        let mut resource_lookup = HashMap::with_capacity(resources.len());
        for (i, r) in resources.iter_mut().enumerate() {
            r.definition_index = i;
            if resource_lookup.insert(r.id.clone(), i).is_some() {
                return Err(InstanceError::DuplicateResource(r.id.clone()));
            }
        }

        let mut predecessors = Vec::with_capacity(tasks.len());
        let mut successors = vec![Vec::new(); tasks.len()];
        for (j, t) in tasks.iter().enumerate() {
            let mut preds = Vec::with_capacity(t.predecessors.len());
            for p in &t.predecessors {
                let i = *task_lookup
                    .get(p)
                    .ok_or_else(|| InstanceError::DanglingPredecessor {
                        task: t.id.clone(),
                        predecessor: p.clone(),
                    })?;
                if !preds.contains(&i) {
                    preds.push(i);
                    successors[i].push(j);
                }
            }
            predecessors.push(preds);
        }

        let capable = tasks
            .iter()
            .map(|t| {
                resources
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| can_perform(r, t))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();

        Ok(ProjectInstance {
            name: name.into(),
            tasks,
            resources,
            skill_types,
            predecessors,
            successors,
            capable,
            task_lookup,
            resource_lookup,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn resources(&self) -> &[Resource] {
        &self.resources
    }

    pub fn skill_types(&self) -> &BTreeSet<String> {
        &self.skill_types
    }

    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    pub fn resource_count(&self) -> usize {
        self.resources.len()
    }

    /// Number of precedence relations (predecessor entries after dedup).
    pub fn relation_count(&self) -> usize {
        self.predecessors.iter().map(Vec::len).sum()
    }

    pub fn task(&self, idx: usize) -> &Task {
        &self.tasks[idx]
    }

    pub fn resource(&self, idx: usize) -> &Resource {
        &self.resources[idx]
    }

    pub fn task_index(&self, id: &str) -> Option<usize> {
        self.task_lookup.get(id).copied()
    }

    pub fn resource_index(&self, id: &str) -> Option<usize> {
        self.resource_lookup.get(id).copied()
    }

    /// Direct predecessors of task `idx`, as task indices.
    pub fn predecessors_of(&self, idx: usize) -> &[usize] {
        &self.predecessors[idx]
    }

    /// Direct successors of task `idx`, as task indices.
    pub fn successors_of(&self, idx: usize) -> &[usize] {
        &self.successors[idx]
    }

    /// Resource indices able to perform task `idx`, in definition order.
    pub fn capable_of(&self, idx: usize) -> &[usize] {
        &self.capable[idx]
    }

    /// Resources able to perform `task`, in instance resource order.
    pub fn capable_resources(&self, task: &Task) -> Vec<&Resource> {
        self.resources
            .iter()
            .filter(|r| can_perform(r, task))
            .collect()
    }

    /// Sum of all task durations: the makespan of a fully serial schedule.
    pub fn serial_duration(&self) -> u64 {
        self.tasks.iter().map(|t| t.duration).sum()
    }

    /// Task indices in a topological order, or `None` if the precedence
    /// graph has a cycle. Ties are taken in definition order.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.tasks.len();
        let mut indegree: Vec<usize> = self.predecessors.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&j| indegree[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(j) = ready.pop_first() {
            order.push(j);
            for &s in &self.successors[j] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.insert(s);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Number of tasks reachable from `idx` through successor edges.
    pub fn transitive_successor_count(&self, idx: usize) -> usize {
        let mut seen = vec![false; self.tasks.len()];
        let mut stack = vec![idx];
        let mut count = 0;
        while let Some(j) = stack.pop() {
            for &s in &self.successors[j] {
                if !seen[s] {
                    seen[s] = true;
                    count += 1;
                    stack.push(s);
                }
            }
        }
        count
    }
}

/// Which invariant an instance violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceViolation {
    NonPositiveDuration { task: String },
    NegativeSalary { resource: String },
    NoSkills { resource: String },
    SelfPredecessor { task: String },
    /// Task ids along one cycle, first id repeated at the end.
    PrecedenceCycle { path: Vec<String> },
    NoCapableResource { task: String },
    UnknownSkillType { owner: String, kind: String },
}

impl InstanceViolation {
    /// Stable rule name used in reports.
    pub fn rule(&self) -> &'static str {
        match self {
            InstanceViolation::NonPositiveDuration { .. } => "positive-duration",
            InstanceViolation::NegativeSalary { .. } => "non-negative-salary",
            InstanceViolation::NoSkills { .. } => "non-empty-skills",
            InstanceViolation::SelfPredecessor { .. } => "no-self-precedence",
            InstanceViolation::PrecedenceCycle { .. } => "acyclic-precedence",
            InstanceViolation::NoCapableResource { .. } => "schedulable-task",
            InstanceViolation::UnknownSkillType { .. } => "declared-skill-type",
        }
    }
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.rule())?;
        match self {
            InstanceViolation::NonPositiveDuration { task } => {
                write!(f, "task {task} has zero duration")
            }
            InstanceViolation::NegativeSalary { resource } => {
                write!(f, "resource {resource} has a negative salary")
            }
            InstanceViolation::NoSkills { resource } => {
                write!(f, "resource {resource} owns no skills")
            }
            InstanceViolation::SelfPredecessor { task } => {
                write!(f, "task {task} lists itself as a predecessor")
            }
            InstanceViolation::PrecedenceCycle { path } => {
                write!(f, "precedence cycle {}", path.join(" -> "))
            }
            InstanceViolation::NoCapableResource { task } => {
                write!(f, "no resource can perform task {task}")
            }
            InstanceViolation::UnknownSkillType { owner, kind } => {
                write!(f, "{owner} refers to undeclared skill type {kind}")
            }
        }
    }
}

/// Lists every invariant the instance breaks. An empty list means the
/// instance is well formed and schedulable.
pub fn validate_instance(instance: &ProjectInstance) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    for r in &instance.resources {
        if r.salary < 0.0 || r.salary.is_nan() {
            out.push(InstanceViolation::NegativeSalary {
                resource: r.id.clone(),
            });
        }
        if r.skills.is_empty() {
            out.push(InstanceViolation::NoSkills {
                resource: r.id.clone(),
            });
        }
        for s in &r.skills {
            if !instance.skill_types.contains(&s.kind) {
                out.push(InstanceViolation::UnknownSkillType {
                    owner: r.id.clone(),
                    kind: s.kind.clone(),
                });
            }
        }
    }
    for (j, t) in instance.tasks.iter().enumerate() {
        if t.duration == 0 {
            out.push(InstanceViolation::NonPositiveDuration { task: t.id.clone() });
        }
        if instance.predecessors[j].contains(&j) {
            out.push(InstanceViolation::SelfPredecessor { task: t.id.clone() });
        }
        if !instance.skill_types.contains(&t.required_skill.kind) {
            out.push(InstanceViolation::UnknownSkillType {
                owner: t.id.clone(),
                kind: t.required_skill.kind.clone(),
            });
        }
        if instance.capable[j].is_empty() {
            out.push(InstanceViolation::NoCapableResource { task: t.id.clone() });
        }
    }
    out.extend(find_cycles(instance));
    out
}

/// One violation per strongly connected component of size > 1 in the
/// precedence graph. Self loops are reported separately.
fn find_cycles(instance: &ProjectInstance) -> Vec<InstanceViolation> {
    if instance.topological_order().is_some() {
        return Vec::new();
    }
    let n = instance.task_count();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    let mut reports = Vec::new();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut path: Vec<usize> = vec![root];
        state[root] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            let succ = instance.successors_of(node);
            if *next < succ.len() {
                let s = succ[*next];
                *next += 1;
                if s == node {
                    continue;
                }
                match state[s] {
                    0 => {
                        state[s] = 1;
                        stack.push((s, 0));
                        path.push(s);
                    }
                    1 => {
                        let start = path.iter().position(|&p| p == s).unwrap_or(0);
                        let members = &path[start..];
                        if members.iter().all(|&m| !on_cycle[m]) {
                            for &m in members {
                                on_cycle[m] = true;
                            }
                            let mut ids: Vec<String> =
                                members.iter().map(|&m| instance.tasks[m].id.clone()).collect();
                            ids.push(instance.tasks[s].id.clone());
                            reports.push(InstanceViolation::PrecedenceCycle { path: ids });
                        }
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
                path.pop();
            }
        }
    }
    reports
}

/// `n! * m^n`: orderings of tasks times unconstrained resource assignments.
pub fn solution_space_size(tasks: u32, resources: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=tasks {
        acc *= i;
    }
    acc * BigUint::from(resources).pow(tasks)
}

/// Decimal magnitude of a big integer, `mantissa * 10^exponent`, with the
/// mantissa rounded half-up to `digits` significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnitude {
    pub mantissa: f64,
    pub exponent: u32,
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", self.mantissa, self.exponent)
    }
}

pub fn magnitude(value: &BigUint, digits: usize) -> Magnitude {
    let digits = digits.max(1);
    let text = value.to_str_radix(10);
    let mut exponent = (text.len() - 1) as u32;
    let bytes = text.as_bytes();
    let mut kept: Vec<u8> = bytes.iter().take(digits).map(|b| b - b'0').collect();
    while kept.len() < digits {
        kept.push(0);
    }
    if bytes.len() > digits && bytes[digits] >= b'5' {
        let mut i = digits;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exponent += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let mut mantissa = 0.0;
    for (pos, d) in kept.iter().enumerate() {
        mantissa += f64::from(*d) * 10f64.powi(-(pos as i32));
    }
    let scale = 10f64.powi(digits as i32 - 1);
    Magnitude {
        mantissa: (mantissa * scale).round() / scale,
        exponent,
    }
}
