//! The simple-minded-system laboratory: extension closures, filtration
//! lengths, system classification, divergence ladders with replayable
//! certificates, and the per-lemma verifier registry.

pub mod classify;
pub mod closure;
pub mod cone;
pub mod ladder;
pub mod lemmas;

pub use classify::SystemReport;
pub use closure::{ClosureState, EllValue};
pub use ladder::{replay, Certificate, LadderKind, StratLadder, CERT_FORMAT};
pub use lemmas::{LemmaReport, TheoremReport, LEMMA_IDS};
