use thiserror::Error;

use crate::state::Subspace;

/// Errors raised while reading network documents or literals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: undeclared variable `{name}`")]
    UndeclaredVariable { line: usize, column: usize, name: String },
    #[error("line {line}: component `{name}` already declared on line {first_line}")]
    DuplicateComponent {
        line: usize,
        name: String,
        first_line: usize,
    },
    #[error("document declares no components")]
    EmptyDocument,
    #[error("literal has length {found}, expected {expected}")]
    LiteralLength { expected: usize, found: usize },
    #[error("illegal character `{ch}` at position {position} of literal")]
    LiteralCharacter { position: usize, ch: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BnError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("component index {index} is out of range for {arity} components")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("{what} on {arity} components exceeds the limit of {cap} components")]
    Capacity {
        what: &'static str,
        arity: usize,
        cap: usize,
    },
    #[error("component `{name}` is autoregulated ({signs} self-loop) and cannot be eliminated")]
    Autoregulated { name: String, signs: &'static str },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("propagation from {seed} has no fixpoint: it cycles through {} subspaces", cycle.len())]
    NonMonotone { seed: Subspace, cycle: Vec<Subspace> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl BnError {
    pub fn is_capacity(&self) -> bool {
        matches!(self, BnError::Capacity { .. })
    }
}

pub type Result<T, E = BnError> = std::result::Result<T, E>;
