use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::aco::AcoParams;
use crate::model::ProjectInstance;
use crate::scheduling::{makespan, total_cost, Assignment, OptimizationMode, Schedule};

use super::{format_number, ParseError, ParseErrorKind};

const HEADER: &str = "task resource start finish";
const SEPARATOR: &str = "---";

/// Footer data of a solution file besides makespan and cost, which are
/// always recomputed from the schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionMeta {
    pub mode: OptimizationMode,
    /// First 16 hex digits of the SHA-256 of [`AcoParams::canonical`];
    /// `None` for heuristic solutions.
    pub params_digest: Option<String>,
    pub seed: Option<u64>,
}

impl SolutionMeta {
    pub fn heuristic(mode: OptimizationMode) -> Self {
        SolutionMeta {
            mode,
            params_digest: None,
            seed: None,
        }
    }

    pub fn colony(mode: OptimizationMode, params: &AcoParams) -> Self {
        SolutionMeta {
            mode,
            params_digest: Some(params_digest(params)),
            seed: Some(params.seed),
        }
    }
}

pub fn params_digest(params: &AcoParams) -> String {
    let hash = Sha256::digest(params.canonical().as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Renders the schedule, one line per task in definition order.
///
/// ```text
/// task resource start finish
/// T1 R1 0 3
/// T2 R2 0 4
/// ---
/// makespan: 4
/// cost: 110
/// mode: do
/// params: -
/// seed: -
/// ```
pub fn write_solution(schedule: &Schedule, instance: &ProjectInstance, meta: &SolutionMeta) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for (j, task) in instance.tasks().iter().enumerate() {
        let k = schedule.assignment().resource_of(j);
        let _ = writeln!(
            out,
            "{} {} {} {}",
            task.id,
            instance.resource(k).id,
            schedule.start(j),
            schedule.finish(j)
        );
    }
    let dash = || "-".to_string();
    let _ = writeln!(out, "{SEPARATOR}");
    let _ = writeln!(out, "makespan: {}", makespan(schedule));
    let _ = writeln!(out, "cost: {}", format_number(total_cost(schedule, instance)));
    let _ = writeln!(out, "mode: {}", meta.mode);
    let _ = writeln!(out, "params: {}", meta.params_digest.clone().unwrap_or_else(dash));
    let _ = writeln!(out, "seed: {}", meta.seed.map_or_else(dash, |s| s.to_string()));
    out
}

/// Inverse of [`write_solution`]. Footer makespan and cost must agree with
/// the schedule body.
pub fn read_solution(text: &str, instance: &ProjectInstance) -> Result<(Schedule, SolutionMeta), ParseError> {
    let n = instance.task_count();
    let mut resource = vec![None; n];
    let mut start = vec![0u64; n];
    let mut finish = vec![0u64; n];
    let mut footer: Vec<(usize, &str, &str)> = Vec::new();
    let mut in_footer = false;
    let mut saw_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line.split_whitespace().collect::<Vec<_>>().join(" ") != HEADER {
                return Err(ParseError::new(line_no, 1, ParseErrorKind::MalformedHeader));
            }
            saw_header = true;
            continue;
        }
        if line == SEPARATOR {
            in_footer = true;
            continue;
        }
        if in_footer {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| ParseError::new(line_no, 1, ParseErrorKind::UnexpectedLine))?;
            footer.push((line_no, key.trim(), value.trim()));
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [task_id, res_id, s, f] = fields[..] else {
            return Err(ParseError::new(line_no, 1, ParseErrorKind::MissingField));
        };
        let j = instance
            .task_index(task_id)
            .ok_or_else(|| ParseError::new(line_no, 1, ParseErrorKind::UnknownTaskReference(task_id.into())))?;
        let k = instance.resource_index(res_id).ok_or_else(|| {
            ParseError::new(line_no, task_id.len() + 2, ParseErrorKind::UnknownResourceReference(res_id.into()))
        })?;
        if resource[j].is_some() {
            return Err(ParseError::new(line_no, 1, ParseErrorKind::DuplicateTaskId(task_id.into())));
        }
        let number = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| ParseError::new(line_no, 1, ParseErrorKind::BadNumber(t.into())))
        };
        resource[j] = Some(k);
        start[j] = number(s)?;
        finish[j] = number(f)?;
    }
    if !saw_header {
        return Err(ParseError::new(1, 1, ParseErrorKind::MalformedHeader));
    }
    let found = resource.iter().filter(|r| r.is_some()).count();
    if found != n {
        return Err(ParseError::new(
            1,
            1,
            ParseErrorKind::CountMismatch {
                what: "tasks",
                expected: n,
                found,
            },
        ));
    }
    let assignment = Assignment::new(resource.into_iter().map(|r| r.expect("counted")).collect());
    let schedule = Schedule::from_parts(assignment, start, finish);

    let mut meta = SolutionMeta::heuristic(OptimizationMode::DURATION);
    let mut seen_mode = false;
    for (line, key, value) in footer {
        let bad_value = || ParseError::new(line, 1, ParseErrorKind::BadNumber(value.into()));
        match key {
            "makespan" => {
                let declared: u64 = value.parse().map_err(|_| bad_value())?;
                if declared != makespan(&schedule) {
                    return Err(ParseError::new(
                        line,
                        1,
                        ParseErrorKind::Instance(format!(
                            "footer makespan {declared} disagrees with schedule makespan {}",
                            makespan(&schedule)
                        )),
                    ));
                }
            }
            "cost" => {
                let declared: f64 = value.parse().map_err(|_| bad_value())?;
                let actual = total_cost(&schedule, instance);
                if (declared - actual).abs() > 0.005 + 1e-9 * actual.abs() {
                    return Err(ParseError::new(
                        line,
                        1,
                        ParseErrorKind::Instance(format!(
                            "footer cost {declared} disagrees with schedule cost {}",
                            format_number(actual)
                        )),
                    ));
                }
            }
            "mode" => {
                meta.mode = value.parse().map_err(|_| bad_value())?;
                seen_mode = true;
            }
            "params" => meta.params_digest = (value != "-").then(|| value.to_string()),
            "seed" => {
                meta.seed = match value {
                    "-" => None,
                    v => Some(v.parse().map_err(|_| bad_value())?),
                }
            }
            _ => return Err(ParseError::new(line, 1, ParseErrorKind::UnexpectedLine)),
        }
    }
    if !seen_mode {
        return Err(ParseError::new(1, 1, ParseErrorKind::MissingSection("footer")));
    }
    Ok((schedule, meta))
}
