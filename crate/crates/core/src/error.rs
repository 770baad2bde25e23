use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two vectors or states disagree on length or shape.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A shape or vector violates its structural invariants.
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// A construction was requested outside the range where it is defined.
    #[error("construction parameter out of range: {0}")]
    ConstructionDomain(String),

    /// The input set contains pairs that are not orthogonal.
    #[error("state set is not pairwise orthogonal; violating pairs: {}", format_pairs(.0))]
    NotOrthogonal(Vec<(usize, usize)>),

    /// A state or party index does not exist in the set.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// An inference rule was invoked before its preconditions hold.
    #[error("rule inapplicable: {0}")]
    RuleInapplicable(String),

    /// An interchange document failed to parse or validate.
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn format_pairs(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(i, j)| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(", ")
}
