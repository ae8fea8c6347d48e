use thiserror::Error;

/// Errors produced by the combinatorial and series routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition text {0:?}: {1}")]
    ParsePartition(String, String),

    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("corrupted Gordon marking: {0}")]
    Structure(String),

    #[error("backward move of kind {kind} would push a part below 1")]
    Underflow { kind: u32 },

    #[error("move of kind {kind} breaks the frequency bound for k = {k}")]
    Validity { kind: u32, k: u32 },

    #[error("no {kind}-marked part to move")]
    NoSuchPart { kind: u32 },

    #[error("partition is not in {family}: {reason}")]
    NotMember { family: String, reason: String },

    #[error("invalid ledger: {0}")]
    Ledger(String),

    #[error("invalid lattice path: {0}")]
    Path(String),

    #[error("peak move impossible: {0}")]
    Geometry(String),

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series has no inverse (constant term is not a unit)")]
    NotInvertible,

    #[error("unknown identifier {0:?}")]
    Unknown(String),

    #[error("parity prerequisite violated: {0}")]
    ParityPrerequisite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
