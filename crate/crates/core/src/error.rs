use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("orientation inconsistency: {0}")]
    Orientation(String),

    #[error("Gauss phrase is not realizable as a planar diagram")]
    NotRealizable,

    #[error("complex is not a chain complex: {0}")]
    NotAComplex(String),

    #[error("filtration violated: {0}")]
    Filtration(String),

    #[error("bicomplex squares do not anticommute: {0}")]
    Anticommutation(String),

    #[error("{what} has {size} crossings, budget is {limit}")]
    BudgetExceeded {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("expected a knot, got a diagram with {0} components")]
    MultiComponent(usize),

    #[error("color vector out of range: {0}")]
    ColorRange(String),

    #[error("invalid homotopy data: {0}")]
    HomotopyData(String),

    #[error("move does not apply: {0}")]
    MoveMismatch(String),

    #[error("search budget exceeded after {0} states")]
    SearchBudget(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
