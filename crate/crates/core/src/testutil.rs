use std::collections::BTreeSet;

use crate::model::{ProjectInstance, Resource, Skill, Task};

pub(crate) fn res(id: &str, salary: f64, skills: &[(&str, u32)]) -> Resource {
    Resource {
        id: id.into(),
        salary,
        skills: skills.iter().map(|(k, l)| Skill::new(*k, *l)).collect(),
        definition_index: 0,
    }
}

pub(crate) fn task(id: &str, d: u64, skill: (&str, u32), preds: &[&str]) -> Task {
    Task {
        id: id.into(),
        duration: d,
        required_skill: Skill::new(skill.0, skill.1),
        predecessors: preds.iter().map(|p| p.to_string()).collect(),
        definition_index: 0,
    }
}

pub(crate) fn types(kinds: &[&str]) -> BTreeSet<String> {
    kinds.iter().map(|s| s.to_string()).collect()
}

/// Four resources, four tasks; the skill matrix of the classic example.
pub(crate) fn sample() -> ProjectInstance {
    let resources = vec![
        res("R1", 10.0, &[("Q1", 3), ("Q2", 2)]),
        res("R2", 20.0, &[("Q3", 1)]),
        res("R3", 5.0, &[("Q2", 1)]),
        res("R4", 30.0, &[("Q2", 2), ("Q3", 2)]),
    ];
    let tasks = vec![
        task("T1", 3, ("Q2", 2), &[]),
        task("T2", 4, ("Q3", 1), &[]),
        task("T3", 2, ("Q2", 1), &["T1"]),
        task("T4", 5, ("Q1", 2), &["T2"]),
    ];
    ProjectInstance::new("sample", tasks, resources, types(&["Q1", "Q2", "Q3"])).unwrap()
}

/// Every resource can do every task; salaries 1..=m.
pub(crate) fn uniform(n: usize, m: usize, durations: &[u64], preds: &[(usize, usize)]) -> ProjectInstance {
    let resources = (0..m)
        .map(|k| res(&format!("R{}", k + 1), (k + 1) as f64, &[("Q", 1)]))
        .collect();
    let tasks = (0..n)
        .map(|j| {
            let p: Vec<String> = preds
                .iter()
                .filter(|(_, b)| *b == j)
                .map(|(a, _)| format!("T{}", a + 1))
                .collect();
            let mut t = task(&format!("T{}", j + 1), durations[j % durations.len()], ("Q", 1), &[]);
            t.predecessors = p;
            t
        })
        .collect();
    ProjectInstance::new("uniform", tasks, resources, types(&["Q"])).unwrap()
}
