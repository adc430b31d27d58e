//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible quadratic extensions: sqrt({0}) vs sqrt({1})")]
    IncompatibleExtension(i64, i64),
    #[error("{0} is not a valid extension discriminant (must be squarefree and not a square)")]
    NotAnExtension(i64),
    #[error("zero input where a nonzero field element is required")]
    ZeroInput,
    #[error("trial division bound {bound} exceeded while factoring {value}")]
    FactorBoundExceeded { value: String, bound: u64 },
    #[error("integer overflow while canonicalizing a square class")]
    SquareClassOverflow,
    #[error("element does not belong to the {0:?} preset")]
    WrongPreset(crate::exactfield::FieldPreset),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("singular matrix")]
    SingularMatrix,

    #[error("malformed triple: {0}")]
    MalformedTriple(String),
    #[error("triple is not admissible: {0}")]
    InvalidTriple(String),
    #[error("enumeration bound exceeded: n = {n} > {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("no continuous parameter exists for the triple (internal inconsistency)")]
    NoContinuousParameter,
    #[error("supplied continuous parameter violates its constraints: {0}")]
    BadContinuousParameter(String),

    #[error("twisted cohomology is empty: the triple is not twistable")]
    EmptyCohomology,
    #[error("class assignment has length {got}, expected {expected} (one value per symmetric string without middlepoint)")]
    AssignmentLength { got: usize, expected: usize },
    #[error("cocycle carries no factorization X = R J D")]
    Unfactored,
    #[error("matrix does not satisfy conj(X) = X S D for any diagonal D")]
    NotACocycleShape,
    #[error("degenerate pivot in cocycle reduction")]
    DegeneratePivot,
    #[error("cocycle reduction failed")]
    ReductionFailed,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
