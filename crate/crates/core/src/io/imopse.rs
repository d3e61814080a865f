use std::collections::BTreeSet;

use crate::model::{ProjectInstance, Resource, Skill, Task};

use super::instance::check_ids;
use super::{ParseError, ParseErrorKind};

/// Reads the layout of the published iMOPSE `.def` files.
///
/// ```text
/// Tasks: 3
/// Resources: 2
/// Precedence relations: 1
/// Number of skill types: 2
/// =====================================
/// ResourceID  Salary  Skills
/// 1  47.8  Q0: 1  Q1: 3
/// 2  22.1  Q1: 0
/// =====================================
/// TaskID  Duration  Skill  Predecessor IDs
/// 1  20  Q1: 0
/// 2  11  Q0: 1  1
/// ```
///
/// Counts in the preamble are checked when present. Lines of `=` and any
/// other preamble line (file name, dates) are skipped. `Qn: level` may be
/// written with or without the space after the colon.
pub fn parse_imopse(text: &str, name: &str) -> Result<ProjectInstance, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Resources,
        Tasks,
    }
    let mut section = Section::Preamble;
    let mut declared: [Option<(usize, usize)>; 3] = [None; 3];
    let mut resources: Vec<(usize, Resource)> = Vec::new();
    let mut tasks: Vec<(usize, Task)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.chars().all(|c| c == '=') {
            continue;
        }
        if line.starts_with("ResourceID") {
            section = Section::Resources;
            continue;
        }
        if line.starts_with("TaskID") {
            section = Section::Tasks;
            continue;
        }
        let tokens = tokens(line);
        match section {
            Section::Preamble => {
                if let Some((key, value)) = line.split_once(':') {
                    let key = key.trim().to_ascii_lowercase();
                    let slot = if key == "tasks" {
                        Some(0)
                    } else if key == "resources" {
                        Some(1)
                    } else if key.contains("relations") {
                        Some(2)
                    } else {
                        None
                    };
                    if let Some(slot) = slot {
                        let n = value.trim().parse::<usize>().map_err(|_| {
                            ParseError::new(line_no, key.len() + 2, ParseErrorKind::MalformedHeader)
                        })?;
                        declared[slot] = Some((n, line_no));
                    }
                }
            }
            Section::Resources => {
                let (id, salary, rest) = leading_fields(&tokens, line_no)?;
                let salary = salary
                    .parse::<f64>()
                    .map_err(|_| ParseError::new(line_no, 1, ParseErrorKind::BadNumber(salary.into())))?;
                let skills = rest
                    .iter()
                    .map(|t| skill(t, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                resources.push((
                    line_no,
                    Resource {
                        id: id.to_string(),
                        salary,
                        skills,
                        definition_index: resources.len(),
                    },
                ));
            }
            Section::Tasks => {
                let (id, duration, rest) = leading_fields(&tokens, line_no)?;
                let duration = duration
                    .parse::<u64>()
                    .map_err(|_| ParseError::new(line_no, 1, ParseErrorKind::BadNumber(duration.into())))?;
                let (first, preds) = rest
                    .split_first()
                    .ok_or_else(|| ParseError::new(line_no, 1, ParseErrorKind::MissingField))?;
                tasks.push((
                    line_no,
                    Task {
                        id: id.to_string(),
                        duration,
                        required_skill: skill(first, line_no)?,
                        predecessors: preds.iter().map(|p| p.to_string()).collect(),
                        definition_index: tasks.len(),
                    },
                ));
            }
        }
    }

    if section == Section::Preamble {
        return Err(ParseError::new(1, 1, ParseErrorKind::MalformedHeader));
    }
    if tasks.is_empty() && section != Section::Tasks {
        return Err(ParseError::new(1, 1, ParseErrorKind::MissingSection("TaskID")));
    }
    let relations: usize = tasks.iter().map(|(_, t)| t.predecessors.len()).sum();
    let found = [tasks.len(), resources.len(), relations];
    for (slot, what) in ["tasks", "resources", "relations"].into_iter().enumerate() {
        if let Some((expected, line)) = declared[slot] {
            if expected != found[slot] {
                return Err(ParseError::new(
                    line,
                    1,
                    ParseErrorKind::CountMismatch {
                        what,
                        expected,
                        found: found[slot],
                    },
                ));
            }
        }
    }
    check_ids(&tasks, &resources)?;
    let ids: BTreeSet<&str> = tasks.iter().map(|(_, t)| t.id.as_str()).collect();
    for (line, t) in &tasks {
        if let Some(p) = t.predecessors.iter().find(|p| !ids.contains(p.as_str())) {
            return Err(ParseError::new(
                *line,
                1,
                ParseErrorKind::DanglingPredecessor {
                    task: t.id.clone(),
                    predecessor: p.clone(),
                },
            ));
        }
    }
    let skill_types: BTreeSet<String> = resources
        .iter()
        .flat_map(|(_, r)| r.skills.iter().map(|s| s.kind.clone()))
        .chain(tasks.iter().map(|(_, t)| t.required_skill.kind.clone()))
        .collect();
    ProjectInstance::new(
        name,
        tasks.into_iter().map(|(_, t)| t).collect(),
        resources.into_iter().map(|(_, r)| r).collect(),
        skill_types,
    )
    .map_err(|e| ParseError::new(1, 1, ParseErrorKind::Instance(e.to_string())))
}

/// Splits on whitespace, gluing a `Qn:` token to the level that follows it.
fn tokens(line: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for tok in line.split_whitespace() {
        match out.last_mut() {
            Some(prev) if prev.ends_with(':') => prev.push_str(tok),
            _ => out.push(tok.to_string()),
        }
    }
    out
}

fn leading_fields(tokens: &[String], line: usize) -> Result<(&str, &str, &[String]), ParseError> {
    match tokens {
        [id, second, rest @ ..] => Ok((id, second, rest)),
        _ => Err(ParseError::new(line, 1, ParseErrorKind::MissingField)),
    }
}

fn skill(tok: &str, line: usize) -> Result<Skill, ParseError> {
    let bad = || ParseError::new(line, 1, ParseErrorKind::BadSkill(tok.to_string()));
    let (kind, level) = tok.split_once(':').ok_or_else(bad)?;
    // some exports write fractional levels such as "2.0"
    let level = match level.parse::<u32>() {
        Ok(v) => v,
        Err(_) => {
            let f = level.parse::<f64>().map_err(|_| bad())?;
            if f < 0.0 || f.fract() != 0.0 || f > f64::from(u32::MAX) {
                return Err(bad());
            }
            f as u32
        }
    };
    if kind.is_empty() {
        return Err(bad());
    }
    Ok(Skill::new(kind, level))
}
