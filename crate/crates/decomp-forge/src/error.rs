use thiserror::Error;

/// Errors raised by table construction, relational operators and the
/// decomposition algorithms.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute `{0}` declared twice")]
    DuplicateAttribute(String),

    #[error("domain of `{name}` is invalid: {reason}")]
    BadDomain { name: String, reason: String },

    #[error("value `{value}` is not in the domain of `{attr}`")]
    ValueOutsideDomain { attr: String, value: String },

    #[error("don't-care marker `-` is only allowed in output attributes (attribute `{0}`)")]
    DontCareInInput(String),

    #[error("row {0} has {1} values, schema has {2} attributes")]
    RowWidth(usize, usize, usize),

    #[error("duplicate row: {0}")]
    DuplicateRow(String),

    #[error("rows {0} and {1} share the same input values but disagree on the output")]
    ConflictingDuplicate(String, String),

    #[error("truth table is missing {0} input row(s); pass --extend-missing to fill them with `-`")]
    MissingInputRows(usize),

    #[error("input space too large ({0} rows)")]
    InputSpaceTooLarge(u64),

    #[error("attribute `{0}` already exists")]
    NameCollision(String),

    #[error("shared attribute `{0}` has mismatched domains")]
    DomainMismatch(String),

    #[error("relations to join share no attribute")]
    NoSharedAttribute,

    #[error("partitions are over different universes")]
    UniverseMismatch,

    #[error("attribute sets must be disjoint: {0}")]
    NotDisjoint(String),

    #[error("attribute sets do not cover the inputs: {0}")]
    CoverViolation(String),

    #[error("expected exactly one output attribute, found {0}")]
    OutputCount(usize),

    #[error("table contains `-` outputs; use the incompletely-specified algorithm")]
    DontCarePresent,

    #[error("bound and free sets overlap; use the non-disjoint algorithm")]
    NonDisjointSets,

    #[error("bound and free sets are disjoint; the non-disjoint algorithm needs a shared attribute")]
    DisjointSets,

    #[error("column {0} and column {1} cannot be merged: conflicting output values in row {2}")]
    MergeConflict(String, String, String),

    #[error("columns {0:?} are not pairwise mergeable")]
    NotMergeable(Vec<usize>),

    #[error("graph has {0} nodes, exceeding the exact-search bound of {1}; use the greedy mode")]
    NodeBoundExceeded(usize, usize),

    #[error("equivalence is undefined for columns with `-` entries; use compatibility")]
    EquivalenceOnDontCare,

    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),

    #[error("joint dependency {0} -> {1} does not hold; witness rows {2} and {3}")]
    JointDependencyFailed(String, String, String, String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
