use chrono::{DateTime, TimeDelta, Utc};

use super::{IdeaRecord, IngestError, SocialNetwork};

pub const DEFAULT_DAY_LENGTH_HOURS: i64 = 24;

/// A validated session: ideas in `(timestamp, id)` order over a social network,
/// partitioned into fixed-length days starting at the first idea.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub ideas: Vec<IdeaRecord>,
    pub network: SocialNetwork,
    /// Start instant of each day window, strictly increasing.
    pub day_boundaries: Vec<DateTime<Utc>>,
    pub day_length: TimeDelta,
}

impl Session {
    /// Day index of `t`, or `None` before the first boundary.
    pub fn day_of(&self, t: DateTime<Utc>) -> Option<usize> {
        let first = *self.day_boundaries.first()?;
        if t < first {
            return None;
        }
        let idx = ((t - first).num_milliseconds() / self.day_length.num_milliseconds()) as usize;
        Some(idx.min(self.day_boundaries.len() - 1))
    }

    /// Day index of every idea, aligned with `self.ideas`.
    pub fn idea_days(&self) -> Vec<usize> {
        self.ideas
            .iter()
            .map(|i| self.day_of(i.timestamp).unwrap_or(0))
            .collect()
    }

    pub fn ideas_by(&self, participant: usize) -> impl Iterator<Item = &IdeaRecord> {
        self.ideas.iter().filter(move |i| i.participant == participant)
    }

    pub fn n_days(&self) -> usize {
        self.day_boundaries.len()
    }
}

pub fn validate_session(
    mut ideas: Vec<IdeaRecord>,
    network: SocialNetwork,
    day_length: TimeDelta,
) -> Result<Session, IngestError> {
    if day_length <= TimeDelta::zero() {
        return Err(IngestError::InvalidArgument(
            "day length must be positive".into(),
        ));
    }
    if let Some(bad) = ideas.iter().find(|i| i.participant >= network.n()) {
        return Err(IngestError::ParticipantOutOfRange {
            id: bad.id.clone(),
            participant: bad.participant,
            n: network.n(),
        });
    }
    ideas.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.id.cmp(&b.id)));
    let day_boundaries = match (ideas.first(), ideas.last()) {
        (Some(first), Some(last)) => {
            let span = (last.timestamp - first.timestamp).num_milliseconds();
            let days = span / day_length.num_milliseconds() + 1;
            (0..days as i32)
                .map(|d| first.timestamp + day_length * d)
                .collect()
        }
        _ => Vec::new(),
    };
    Ok(Session {
        ideas,
        network,
        day_boundaries,
        day_length,
    })
}
