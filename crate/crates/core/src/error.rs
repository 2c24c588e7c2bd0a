use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ratio of q-factorials did not divide exactly.
    #[error("ratio of q-factorials is not a polynomial")]
    NonPolynomialRatio,

    /// An m-sequence violates monotonicity or the `i <= m_i <= n` bounds.
    #[error("invalid m-sequence: {0}")]
    InvalidMSequence(String),

    /// An element index outside `1..=n`.
    #[error("element {0} out of range 1..={1}")]
    OutOfRange(usize, usize),

    /// A step sequence that is not a lattice path weakly above the diagonal.
    #[error("invalid lattice path: {0}")]
    InvalidPath(String),

    /// A tableau does not have the shape an operation requires.
    #[error("tableau shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    /// The tableau has no insertion witness, so the pair-merging map is
    /// undefined on it.
    #[error("tableau has no insertion witness")]
    MissingWitness,

    /// The order does not match the first e-positive class pattern.
    #[error("order is not in the first e-positive class")]
    NotClassOne,

    /// The order does not match the second e-positive class pattern.
    #[error("order is not in the second e-positive class")]
    NotClassTwo,

    /// Parameters outside a closed formula's domain.
    #[error("invalid formula parameters: {0}")]
    InvalidParams(String),

    /// A coloring with a monochromatic edge.
    #[error("coloring is not proper: edge {{{0}, {1}}} is monochromatic")]
    ImproperColoring(usize, usize),

    /// A survey size beyond the configured budget.
    #[error("survey size {requested} exceeds budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
}
