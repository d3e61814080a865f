use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::model::{ProjectInstance, Resource, Skill, Task};

use super::{ParseError, ParseErrorKind};

/// Parses the native instance format.
///
/// ```text
/// # comment
/// Tasks: 4
/// Resources: 2
/// Relations: 1
/// Skills: 2 Q1 Q2
/// ReSource
/// R1 10 Q1:3 Q2:2
/// R2 25.5 Q2:1
/// Task
/// T1 3 Q2:2
/// T2 4 Q1:1 T1
/// ```
///
/// Header lines are `key: value`; the skill-type list after the count is
/// optional and is otherwise derived from the sections. Resource lines are
/// `id salary kind:level...`, task lines `id duration kind:level pred...`.
/// `#` starts a comment; blank lines and trailing whitespace are ignored.
pub fn parse_instance(text: &str) -> Result<ProjectInstance, ParseError> {
    parse_named(text, "instance")
}

pub fn parse_named(text: &str, name: &str) -> Result<ProjectInstance, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        Header,
        Resources,
        Tasks,
    }
    let mut section = Section::Header;
    let mut counts: [Option<(usize, usize)>; 4] = [None; 4];
    let mut declared_kinds: Option<(usize, Vec<String>)> = None;
    let mut resources: Vec<(usize, Resource)> = Vec::new();
    let mut tasks: Vec<(usize, Task)> = Vec::new();
    let mut seen_any = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        seen_any = true;
        let indent = line.len() - line.trim_start().len();
        let line = line.trim_start();
        match line {
            "ReSource" | "Resources" => {
                if section != Section::Header {
                    return Err(ParseError::new(line_no, indent + 1, ParseErrorKind::UnexpectedLine));
                }
                section = Section::Resources;
                continue;
            }
            "Task" | "Tasks" => {
                if section != Section::Resources {
                    return Err(ParseError::new(line_no, indent + 1, ParseErrorKind::MissingSection("ReSource")));
                }
                section = Section::Tasks;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let Some((key, value)) = line.split_once(':') else {
                    return Err(ParseError::new(line_no, indent + 1, ParseErrorKind::MalformedHeader));
                };
                let slot = match key.trim().to_ascii_lowercase().as_str() {
                    "tasks" => 0,
                    "resources" => 1,
                    "relations" => 2,
                    "skills" => 3,
                    _ => {
                        return Err(ParseError::new(line_no, indent + 1, ParseErrorKind::MalformedHeader))
                    }
                };
                let value_col = indent + key.len() + 2;
                let mut parts = value.split_whitespace();
                let count = parts
                    .next()
                    .and_then(|c| c.parse::<usize>().ok())
                    .ok_or_else(|| ParseError::new(line_no, value_col, ParseErrorKind::MalformedHeader))?;
                counts[slot] = Some((count, line_no));
                if slot == 3 {
                    let kinds: Vec<String> = parts.map(str::to_string).collect();
                    if !kinds.is_empty() {
                        declared_kinds = Some((line_no, kinds));
                    }
                } else if parts.next().is_some() {
                    return Err(ParseError::new(line_no, value_col, ParseErrorKind::MalformedHeader));
                }
            }
            Section::Resources => {
                let mut fields = Fields::new(line, indent);
                let (id, _) = fields.next_required(line_no)?;
                let salary = fields.number::<f64>(line_no)?;
                let mut skills = Vec::new();
                for (tok, col) in fields {
                    skills.push(parse_skill(tok, line_no, col)?);
                }
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
                let mut fields = Fields::new(line, indent);
                let (id, _) = fields.next_required(line_no)?;
                let duration = fields.number::<u64>(line_no)?;
                let (tok, col) = fields.next_required(line_no)?;
                let required_skill = parse_skill(tok, line_no, col)?;
                let predecessors = fields.map(|(p, _)| p.to_string()).collect();
                tasks.push((
                    line_no,
                    Task {
                        id: id.to_string(),
                        duration,
                        required_skill,
                        predecessors,
                        definition_index: tasks.len(),
                    },
                ));
            }
        }
    }

    if !seen_any {
        return Err(ParseError::new(1, 1, ParseErrorKind::MalformedHeader));
    }
    if counts.iter().any(Option::is_none) {
        return Err(ParseError::new(1, 1, ParseErrorKind::MalformedHeader));
    }
    if section != Section::Tasks {
        let missing = if section == Section::Header { "ReSource" } else { "Task" };
        return Err(ParseError::new(1, 1, ParseErrorKind::MissingSection(missing)));
    }
    let [tc, rc, lc, sc] = counts.map(|c| c.expect("checked above"));

    build(name, tasks, resources, declared_kinds, (tc, rc, lc, sc))
}

type Count = (usize, usize);

fn build(
    name: &str,
    tasks: Vec<(usize, Task)>,
    resources: Vec<(usize, Resource)>,
    declared_kinds: Option<(usize, Vec<String>)>,
    (tc, rc, lc, sc): (Count, Count, Count, Count),
) -> Result<ProjectInstance, ParseError> {
    let mismatch = |line: usize, what: &'static str, expected: usize, found: usize| {
        ParseError::new(
            line,
            1,
            ParseErrorKind::CountMismatch {
                what,
                expected,
                found,
            },
        )
    };
    if tc.0 != tasks.len() {
        return Err(mismatch(tc.1, "tasks", tc.0, tasks.len()));
    }
    if rc.0 != resources.len() {
        return Err(mismatch(rc.1, "resources", rc.0, resources.len()));
    }
    let relations: usize = tasks.iter().map(|(_, t)| t.predecessors.len()).sum();
    if lc.0 != relations {
        return Err(mismatch(lc.1, "relations", lc.0, relations));
    }
    let skill_types: BTreeSet<String> = match &declared_kinds {
        Some((_, kinds)) => kinds.iter().cloned().collect(),
        None => resources
            .iter()
            .flat_map(|(_, r)| r.skills.iter().map(|s| s.kind.clone()))
            .chain(tasks.iter().map(|(_, t)| t.required_skill.kind.clone()))
            .collect(),
    };
    if sc.0 != skill_types.len() {
        return Err(mismatch(sc.1, "skills", sc.0, skill_types.len()));
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
    ProjectInstance::new(
        name,
        tasks.into_iter().map(|(_, t)| t).collect(),
        resources.into_iter().map(|(_, r)| r).collect(),
        skill_types,
    )
    .map_err(|e| ParseError::new(1, 1, ParseErrorKind::Instance(e.to_string())))
}

pub(super) fn check_ids(tasks: &[(usize, Task)], resources: &[(usize, Resource)]) -> Result<(), ParseError> {
    let mut seen = BTreeSet::new();
    for (line, t) in tasks {
        if !seen.insert(t.id.as_str()) {
            return Err(ParseError::new(*line, 1, ParseErrorKind::DuplicateTaskId(t.id.clone())));
        }
    }
    let mut seen = BTreeSet::new();
    for (line, r) in resources {
        if !seen.insert(r.id.as_str()) {
            return Err(ParseError::new(*line, 1, ParseErrorKind::DuplicateResourceId(r.id.clone())));
        }
    }
    Ok(())
}

fn parse_skill(tok: &str, line: usize, col: usize) -> Result<Skill, ParseError> {
    let (kind, level) = tok
        .split_once(':')
        .ok_or_else(|| ParseError::new(line, col, ParseErrorKind::BadSkill(tok.to_string())))?;
    let level = level
        .parse::<u32>()
        .map_err(|_| ParseError::new(line, col, ParseErrorKind::BadSkill(tok.to_string())))?;
    if kind.is_empty() {
        return Err(ParseError::new(line, col, ParseErrorKind::BadSkill(tok.to_string())));
    }
    Ok(Skill::new(kind, level))
}

/// Whitespace-separated tokens together with their 1-based column.
struct Fields<'a> {
    line: &'a str,
    offset: usize,
    indent: usize,
}

impl<'a> Fields<'a> {
    fn new(line: &'a str, indent: usize) -> Self {
        Fields {
            line,
            offset: 0,
            indent,
        }
    }

    fn next_required(&mut self, line_no: usize) -> Result<(&'a str, usize), ParseError> {
        let col = self.indent + self.line.len() + 1;
        self.next()
            .ok_or_else(|| ParseError::new(line_no, col, ParseErrorKind::MissingField))
    }

    fn number<T: std::str::FromStr>(&mut self, line_no: usize) -> Result<T, ParseError> {
        let (tok, col) = self.next_required(line_no)?;
        tok.parse::<T>()
            .map_err(|_| ParseError::new(line_no, col, ParseErrorKind::BadNumber(tok.to_string())))
    }
}

impl<'a> Iterator for Fields<'a> {
    type Item = (&'a str, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let rest = &self.line[self.offset..];
        let skip = rest.len() - rest.trim_start().len();
        let rest = &rest[skip..];
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let start = self.offset + skip;
        self.offset = start + len;
        Some((&self.line[start..start + len], self.indent + start + 1))
    }
}

/// Writes an instance in the native format; [`parse_instance`] reads it back
/// to an equal instance.
pub fn write_instance(instance: &ProjectInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", instance.name());
    let _ = writeln!(out, "Tasks: {}", instance.task_count());
    let _ = writeln!(out, "Resources: {}", instance.resource_count());
    let relations: usize = instance.tasks().iter().map(|t| t.predecessors.len()).sum();
    let _ = writeln!(out, "Relations: {relations}");
    let kinds: Vec<&str> = instance.skill_types().iter().map(String::as_str).collect();
    let _ = writeln!(out, "Skills: {} {}", kinds.len(), kinds.join(" "));
    out.push_str("ReSource\n");
    for r in instance.resources() {
        let _ = write!(out, "{} {}", r.id, r.salary);
        for s in &r.skills {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
    }
    out.push_str("Task\n");
    for t in instance.tasks() {
        let _ = write!(out, "{} {} {}", t.id, t.duration, t.required_skill);
        for p in &t.predecessors {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}
