//! Session data: idea logs, social topology, day bucketing, and a seeded
//! synthetic session generator.

mod ideas;
mod network;
mod scores;
mod session;
mod synth;

pub use ideas::{parse_ideas, write_ideas, IdeaKind, IdeaRecord};
pub use network::{build_ring_lattice, parse_network, SocialNetwork};
pub use scores::{attach_scores, parse_scores, ScoreRecord};
pub use session::{validate_session, Session, DEFAULT_DAY_LENGTH_HOURS};
pub use synth::{synth_session, topic_vocabulary, SynthConfig};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IngestError {
    #[error("line {line}: invalid JSON: {message}")]
    Json { line: usize, message: String },
    #[error("line {line}: expected a JSON object")]
    NotAnObject { line: usize },
    #[error("line {line}: missing required field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: field `{field}`: {reason}")]
    InvalidField {
        line: usize,
        field: &'static str,
        reason: String,
    },
    #[error("line {line}: timestamp `{value}` is not a valid RFC 3339 instant")]
    Timestamp { line: usize, value: String },
    #[error("duplicate idea id `{id}` on lines {first_line} and {line}")]
    DuplicateId {
        id: String,
        first_line: usize,
        line: usize,
    },
    #[error("network: {0}")]
    Network(String),
    #[error("idea `{id}` references participant {participant}, but the network has {n} nodes")]
    ParticipantOutOfRange {
        id: String,
        participant: usize,
        n: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
