use thiserror::Error;

/// What went wrong on a particular line of an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),

    #[error("weight of vertex {0} is negative")]
    NegativeWeight(usize),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLengthMismatch { expected: usize, got: usize },

    #[error("k = {k} exceeds the number of vertices {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("graph is not a block graph")]
    NotBlockGraph,
    #[error("no deletion set within budget {0}")]
    NotFound(usize),
    #[error("budget {budget} exceeds the number of vertices {n}")]
    BudgetTooLarge { budget: usize, n: usize },
    #[error("search exceeded budget {0}")]
    BudgetExceeded(usize),

    #[error("solver {solver} not applicable: {reason}")]
    SolverNotApplicable { solver: &'static str, reason: String },
    #[error("deletion set of size {size} exceeds the enumeration limit {max}")]
    DeletionSetTooLarge { size: usize, max: usize },
    #[error("invalid deletion set: {0}")]
    InvalidDeletionSet(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad label at byte {pos}: labels start at 1")]
    BadLabel { pos: usize },
    #[error("join of label {label} with itself at byte {pos}")]
    JoinSameLabel { pos: usize, label: u32 },
    #[error("relabel of label {label} to itself at byte {pos}")]
    RelabelSameLabel { pos: usize, label: u32 },
    #[error("join of labels {i} and {j} adds an edge that already exists")]
    RedundantJoin { i: u32, j: u32 },
    #[error("graph is not a cograph: induced P4 on {0:?}")]
    NotCograph([usize; 4]),
    #[error("expression realizes a different graph than the one supplied")]
    ExpressionMismatch,

    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("modules {0} and {1} are only partially joined")]
    InvalidPartition(usize, usize),
    #[error("{count} compositions exceed the enumeration cap {cap}")]
    CompositionSpaceTooLarge { count: u128, cap: u128 },

    #[error("strategy {strategy} not applicable: {reason}")]
    StrategyNotApplicable { strategy: &'static str, reason: String },
    #[error("reported value {reported} disagrees with witness value {recomputed}")]
    WitnessMismatch { reported: String, recomputed: String },
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
