use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("cost must be non-negative, got {0}")]
    Negative(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse '{0}' as an exact rational")]
    Parse(String),
}

/// Violations of the ground task invariants, reported at construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaskError {
    #[error("duplicate fluent name '{0}'")]
    DuplicateFluent(String),
    #[error("duplicate action name '{0}'")]
    DuplicateAction(String),
    #[error("unknown fluent '{0}'")]
    UnknownFluent(String),
    #[error("fluent id {id} out of range for a universe of {size}")]
    FluentOutOfRange { id: usize, size: usize },
    #[error("action '{action}' both adds and deletes '{fluent}'")]
    AddDeleteOverlap { action: String, fluent: String },
    #[error("action '{action}' requires '{fluent}' both true and false")]
    PreconditionOverlap { action: String, fluent: String },
    #[error("invalid cost: {0}")]
    Cost(#[from] CostError),
    #[error("malformed task json: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExecError {
    #[error("action '{0}' is not applicable")]
    NotApplicable(String),
    #[error("step {step} ('{action}') is not applicable")]
    NotApplicableAtStep { step: usize, action: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PddlError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("unsupported PDDL feature '{0}'")]
    UnsupportedFeature(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("unknown object '{0}'")]
    UnknownObject(String),
    #[error("unknown type '{0}'")]
    UnknownType(String),
    #[error("undeclared predicate '{0}'")]
    UnknownPredicate(String),
    #[error("problem refers to domain '{found}' but domain is '{expected}'")]
    DomainMismatch { expected: String, found: String },
    #[error("grounding would produce about {projected} actions (limit {limit})")]
    GroundingExplosion { projected: u128, limit: u64 },
    #[error("cost of '{action}' times scale {scale} is not an integer")]
    NonIntegerCost { action: String, scale: u64 },
    #[error("plan line {line}: unknown action '{text}'")]
    UnknownAction { line: usize, text: String },
    #[error(transparent)]
    Task(#[from] TaskError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("source plan is not a goal-reaching plan of the original task: {0}")]
    InvalidSourcePlan(String),
    #[error("plan is not a goal-reaching plan of the compiled task: {0}")]
    InvalidPlan(String),
}
