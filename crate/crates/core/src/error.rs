use thiserror::Error;

pub type Result<T> = std::result::Result<T, LieError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("illegal rank {rank} for type {family}")]
    IllegalRank { family: char, rank: usize },

    #[error("unsupported Cartan label {0}")]
    UnsupportedLabel(String),

    #[error("inconsistent structure constants: {0}")]
    ConstructionInconsistency(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    BadRootIndex { index: usize, rank: usize },

    #[error("the L_alpha x g double needs a simple root")]
    MissingAlpha,

    #[error("invariant form is degenerate")]
    DegenerateForm,

    #[error("Lagrangian subspaces need an even-dimensional ambient, got {0}")]
    OddAmbient(usize),

    #[error("window N = {found} is too small (need N >= {min})")]
    WindowTooSmall { min: usize, found: usize },

    #[error("element shape does not match the double: {0}")]
    ShapeMismatch(String),

    #[error("orthogonal complement is not stable between windows {n} and {m}")]
    UnstableWindow { n: usize, m: usize },

    #[error("bracket leaves the window: degree {degree} below -{window}")]
    WindowOverflow { degree: i32, window: usize },

    #[error("mark k = {k} > 1: theorem {theorem} admits no Lagrangian subalgebras for this root")]
    MarkObstruction { theorem: String, k: u32 },

    #[error("series case {case} does not belong to theorem {theorem}")]
    CaseMismatch { theorem: String, case: String },

    #[error("subspace does not live in the target of the quotient map")]
    NotInOrder,

    #[error("search space of {count} bijections exceeds the bound {bound}")]
    SizeGuard { count: u128, bound: u128 },

    #[error("bad Cartan choice: {0}")]
    BadCartanChoice(String),

    #[error("triple is not admissible")]
    BadTriple,

    #[error("no candidate construction for {0} triples; supply the subspace directly")]
    UnsupportedTripleType(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}
