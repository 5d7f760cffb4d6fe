use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants named after invariant failures (`Unclassifiable`, `SpanMismatch`,
/// `CorollaryViolated`, ...) indicate that a theorem-backed postcondition did
/// not hold. For valid inputs they signal a bug, never a user mistake.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} exceeds the supported maximum of {max}", max = crate::f2::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("form is not alternating on the requested subspace")]
    NotAlternating,
    #[error("Arf invariant undefined: the quadratic form is non-zero on the radical")]
    ArfUndefined,
    #[error("second subspace is not contained in the first")]
    NotSubspace,
    #[error("vector {0} is not in the span of the generating set")]
    NotInSpan(String),
    #[error("vectors are linearly dependent")]
    NotIndependent,
    #[error("vector {0} lies in the span of the generating set")]
    Dependent(String),
    #[error("invalid transvector {0}: it must be non-zero and isotropic")]
    InvalidTransvector(String),
    #[error("domain of 2^{0} vectors exceeds the configured budget")]
    DomainTooLarge(usize),
    #[error("generating graph is not connected")]
    NotConnected,
    #[error("search budget of {0} exceeded; result would be incomplete")]
    BudgetExceeded(usize),
    #[error("generators {c} and {a} are not adjacent (Omega(a, c) = 0)")]
    NotAdjacent { c: usize, a: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("graph has {0} vertices, more than supported here")]
    TooManyVertices(usize),
    #[error("inconsistent classification invariants: {0}")]
    Unclassifiable(String),
    #[error("generating set is not equivalent to a D-type tree")]
    NotDType,
    #[error("vector {0} lies in the radical")]
    InRadical(String),
    #[error("no minimal representative found in the coset")]
    NoMinimalRepresentative,
    #[error("no decomposition into orthogonal Delta elements exists for {0}")]
    NoDecomposition(String),
    #[error("generating set is not a D-type tree in normal form: {0}")]
    NotNormalForm(String),
    #[error("subgraph span meets V000 trivially: {0}")]
    EmptyIntersection(String),
    #[error("V000 assembled from subgraphs differs from the brute-force V000")]
    SpanMismatch,
    #[error("corollary violated: {0}")]
    CorollaryViolated(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("no extension vector found in the coset")]
    NoExtensionFound,
    #[error("span of the generating set has dimension {0}, at least 2 is required")]
    DimensionTooSmall(usize),
    #[error("block condition violated by blocks {i} and {j} at generators {bi} and {bj}")]
    BlockConditionViolated { i: usize, j: usize, bi: String, bj: String },
    #[error("invalid block decomposition: {0}")]
    InvalidBlocks(String),
    #[error("vector is fixed by every generator")]
    AllFixed,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
