//! Text formats: instances (native and iMOPSE), solution files and result
//! CSVs.

use std::fmt;
use std::path::Path;

mod imopse;
mod instance;
mod results;
mod solution;

pub use imopse::parse_imopse;
pub use instance::{parse_instance, parse_named, write_instance};
pub use results::{aggregate_runs, format_number, write_results_csv, write_runs_csv, Aggregate, RunStats};
pub use solution::{read_solution, write_solution, SolutionMeta};

use crate::model::ProjectInstance;

/// A parse failure with its 1-based position.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    NotUtf8,
    MalformedHeader,
    MissingSection(&'static str),
    UnexpectedLine,
    MissingField,
    BadNumber(String),
    BadSkill(String),
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    DuplicateTaskId(String),
    DuplicateResourceId(String),
    DanglingPredecessor { task: String, predecessor: String },
    UnknownTaskReference(String),
    UnknownResourceReference(String),
    Instance(String),
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            NotUtf8 => write!(f, "input is not valid UTF-8"),
            MalformedHeader => write!(f, "malformed or incomplete header"),
            MissingSection(s) => write!(f, "missing {s} section"),
            UnexpectedLine => write!(f, "unexpected line"),
            MissingField => write!(f, "missing field"),
            BadNumber(t) => write!(f, "bad number {t:?}"),
            BadSkill(t) => write!(f, "bad skill {t:?}, expected kind:level"),
            CountMismatch {
                what,
                expected,
                found,
            } => write!(f, "header declares {expected} {what}, found {found}"),
            DuplicateTaskId(id) => write!(f, "duplicate task id {id}"),
            DuplicateResourceId(id) => write!(f, "duplicate resource id {id}"),
            DanglingPredecessor { task, predecessor } => {
                write!(f, "task {task} names unknown predecessor {predecessor}")
            }
            UnknownTaskReference(id) => write!(f, "unknown task {id}"),
            UnknownResourceReference(id) => write!(f, "unknown resource {id}"),
            Instance(msg) => write!(f, "{msg}"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

/// Parses raw bytes in whichever format they look like. Never panics.
pub fn parse_instance_bytes(bytes: &[u8], name: &str) -> Result<ProjectInstance, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        ParseError::new(line, column, ParseErrorKind::NotUtf8)
    })?;
    if looks_like_imopse(text) {
        parse_imopse(text, name)
    } else {
        parse_named(text, name)
    }
}

fn looks_like_imopse(text: &str) -> bool {
    text.lines().any(|l| {
        let l = l.trim_start();
        l.starts_with("ResourceID") || l.starts_with("TaskID")
    })
}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(ParseError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "{e}"),
            LoadError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

/// Reads an instance file, named after its file stem.
pub fn load_instance(path: &Path) -> Result<ProjectInstance, LoadError> {
    let bytes = std::fs::read(path).map_err(LoadError::Io)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    parse_instance_bytes(&bytes, &name).map_err(LoadError::Parse)
}
