use thiserror::Error;

/// Errors shared across the crate.
///
/// Everything that can go wrong falls into two classes: malformed input
/// (bad descriptors, unparsable rationals, unknown names) and semantic
/// failures (non-free actions, mismatched groups, exceeded budgets). The
/// command line front end maps the first class to exit code 2 and the
/// second to exit code 1, so keep new variants in the right class.
#[derive(Debug, Error)]
pub enum Error {
    #[error("closure reached {found} elements, above the order cap {cap}")]
    OrderCapExceeded { found: usize, cap: usize },

    #[error("generator {index} is not a permutation of degree {degree}")]
    BadPermutation { index: usize, degree: usize },

    #[error("map is not a group homomorphism (fails on pair {a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },

    #[error("periodic resolution requires a cyclic group")]
    NotCyclic,

    #[error("resolution needs {entries} differential entries, above the budget {budget}")]
    ResolutionBudget { entries: usize, budget: usize },

    #[error("operands of {context} live over different groups")]
    GroupMismatch { context: &'static str },

    #[error("action is not free: cell {cell} in dimension {dim} is fixed by element {element}")]
    NonFreeAction { dim: usize, cell: usize, element: usize },

    #[error("complex failed validation:\n{report}")]
    InvalidComplex { report: String },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("claimed subspace is not contained in the larger space")]
    NotASubspace,

    #[error("cannot express {what} in the given invariant generators")]
    NotExpressible { what: String },

    #[error("map is not equivariant (fails for group element {element})")]
    NotEquivariant { element: usize },

    #[error("cannot parse rational number {text:?}")]
    BadRational { text: String },

    #[error("invalid scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
