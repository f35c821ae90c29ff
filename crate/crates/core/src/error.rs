use thiserror::Error;

/// Everything that can go wrong while building groups, lattices and
/// verification reports.
///
/// The variants fall in three families: input errors (bad spec, bad
/// index), resource caps, and theorem falsifications. The last family
/// must never fire on a catalog group; when one does, the message carries
/// both the expected and the computed value.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("catalog data disagrees with the built group: {0}")]
    CatalogMismatch(String),
    #[error("Coxeter element failed validation: {0}")]
    CoxeterValidationFailed(String),
    #[error("element is not in the group")]
    ElementNotInGroup,

    #[error("|NCP| = {computed}, expected {expected}")]
    CatalanMismatch { expected: String, computed: String },
    #[error("no {kind} for members {u} and {v}")]
    MeetJoinMissing { kind: &'static str, u: usize, v: usize },

    #[error("|Red(c)| = {computed}, expected {expected}")]
    RedCountMismatch { expected: String, computed: String },
    #[error("count ledger disagrees at p = {p}: {detail}")]
    LedgerDisagreement { p: usize, detail: String },
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("braid generator index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("orbit exceeded cap of {cap} tuples")]
    OrbitCapExceeded { cap: usize },
    #[error("primitive orbit classification failed: {0}")]
    ClassificationMismatch(String),

    #[error("element is not a divisor of the Coxeter element")]
    NotADivisor,
    #[error("derived degree {numerator}/{denominator} is not an integer")]
    NonIntegralDegree { numerator: String, denominator: String },
    #[error("table row mismatch: {0}")]
    TableMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
