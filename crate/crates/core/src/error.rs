//! Crate-wide error type.
//!
//! Every fallible operation in the workbench reports one of these variants;
//! "inconclusive" outcomes (caps hit, residue field too large) are ordinary
//! variants so callers can map them to a distinct exit status.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },

    #[error("relation not admissible: {0}")]
    NonAdmissible(String),

    #[error("relation path does not compose: {0}")]
    NonComposable(String),

    #[error("rewriting did not reach a confluent system: {0}")]
    NonConfluent(String),

    #[error("nilpotency bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("algebra is not special biserial: {0}")]
    NotSpecialBiserial(String),

    #[error("invalid string/band word: {0}")]
    InvalidWord(String),

    #[error("band parameter must be nonzero")]
    ZeroParameter,

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("field too small: p = {p} <= dim End = {dim_end}; raise p")]
    FieldTooSmall { p: u64, dim_end: usize },

    #[error("End/rad has dimension {residue_dim} > 1 on an indecomposable; verdict suspended")]
    NonSplitResidue { residue_dim: usize },

    #[error("algebra is not self-injective")]
    NotSelfInjective,

    #[error("module has a projective summand")]
    ProjectiveInput,

    #[error("socle of Ext^1 as an End-module has dimension {0} != 1; sequence refused")]
    SocleNotLine(usize),

    #[error("component is not stably quasi-serial: {0}")]
    NotQuasiSerial(String),

    #[error("no witnessing extension class found: {0}")]
    NotFound(String),

    #[error("sweep cap exceeded: {0}")]
    CapExceeded(String),

    #[error("verified depth exceeded: {0}")]
    DepthExceeded(String),

    #[error("ladder condition failed at index {index} against `{member}`: {detail}")]
    ConditionFailed {
        index: usize,
        member: String,
        detail: String,
    },

    #[error("universe incomplete: {0}")]
    UniverseIncomplete(String),

    #[error("lemma hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid module data: {0}")]
    InvalidRep(String),

    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 1 = verdict failed, 2 = usage/input error,
    /// 3 = honest inconclusiveness (caps, non-split residues).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConditionFailed { .. }
            | Error::NotFound(_)
            | Error::InvalidCertificate(_) => 1,
            Error::FieldTooSmall { .. }
            | Error::NonSplitResidue { .. }
            | Error::CapExceeded(_)
            | Error::DepthExceeded(_)
            | Error::BoundExceeded(_)
            | Error::UniverseIncomplete(_)
            | Error::HypothesisUnmet(_)
            | Error::SocleNotLine(_) => 3,
            _ => 2,
        }
    }
}
