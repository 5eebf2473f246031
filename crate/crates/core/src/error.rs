use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, SoficError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoficError {
    /// Presentation data is structurally invalid (bad vertex index, duplicate symbol, ...).
    Malformed(String),
    UnknownSymbol(String),
    /// The presentation has no bi-infinite path.
    EmptyLanguage,
    NotTransitive,
    /// A word argument is not in the language of the shift.
    Inadmissible,
    /// An argument violates the documented precondition of an operation.
    Precondition(String),
    /// A class argument that must be synchronizing is not.
    NotSynchronizing,
    /// `l` is not the length of a cycle at the given Shannon-graph vertex.
    NotACycleLength { class: usize, length: usize },
    NotConjugate,
    /// Decomposition was asked for a periodic point.
    PeriodicPoint,
    /// A block map table misses an admissible block.
    NotTotal(String),
    /// The shift is finite where an infinite one is required.
    FiniteShift,
    EntropyPrecondition,
    PeriodicPointPrecondition,
    AperiodicityPrecondition,
    /// A guard that should be unreachable under the documented invariants fired.
    Internal(String),
    ResourceExceeded(String),
}

impl fmt::Display for SoficError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoficError::Malformed(m) => write!(f, "malformed presentation: {m}"),
            SoficError::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            SoficError::EmptyLanguage => f.write_str("empty language"),
            SoficError::NotTransitive => f.write_str("shift is not topologically transitive"),
            SoficError::Inadmissible => f.write_str("word is not admissible"),
            SoficError::Precondition(m) => write!(f, "precondition violated: {m}"),
            SoficError::NotSynchronizing => f.write_str("class is not synchronizing"),
            SoficError::NotACycleLength { class, length } => {
                write!(f, "{length} is not a cycle length at class {class}")
            }
            SoficError::NotConjugate => f.write_str("words are not conjugate"),
            SoficError::PeriodicPoint => f.write_str("point is periodic"),
            SoficError::NotTotal(m) => write!(f, "block map not total: {m}"),
            SoficError::FiniteShift => f.write_str("shift is finite"),
            SoficError::EntropyPrecondition => f.write_str("entropy precondition"),
            SoficError::PeriodicPointPrecondition => f.write_str("periodic point precondition"),
            SoficError::AperiodicityPrecondition => f.write_str("aperiodicity precondition"),
            SoficError::Internal(m) => write!(f, "internal invariant failure: {m}"),
            SoficError::ResourceExceeded(m) => write!(f, "resource exceeded: {m}"),
        }
    }
}

impl core::error::Error for SoficError {}
