use thiserror::Error;

/// Structural problems found while assembling an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("duplicate task id {0}")]
    DuplicateTask(String),
    #[error("duplicate resource id {0}")]
    DuplicateResource(String),
    #[error("task {task} lists unknown predecessor {predecessor}")]
    DanglingPredecessor { task: String, predecessor: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("assignment covers {got} tasks, instance has {expected}")]
    AssignmentNotTotal { expected: usize, got: usize },
    #[error("task {task} assigned to unknown resource index {resource}")]
    UnknownResource { task: String, resource: usize },
    #[error("task {task} assigned to resource {resource} which lacks the required skill")]
    IncapableResource { task: String, resource: String },
    #[error("task order is not a permutation of the instance tasks")]
    OrderNotPermutation,
    #[error("task order places {task} before its predecessor {predecessor}")]
    OrderViolatesPrecedence { task: String, predecessor: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("all salaries are equal; cost cannot be normalised")]
    DegenerateCostRange,
}

/// Failures of a solver run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("instance is invalid: {0}")]
    InvalidInstance(String),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("task {0} has no capable resource")]
    NoCapableResource(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}
