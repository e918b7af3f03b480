use chrono::{DateTime, TimeDelta, Utc};
use serde::Serialize;

use super::{layout::rfc3339, IdeaNode, NetworkError};
use crate::scalar::Real;

/// `s_min + (1 − s_min)·exp(−age/τ)`. Negative ages count as zero.
pub fn recency_saturation<T: Real>(age: TimeDelta, tau: TimeDelta, s_min: T) -> T {
    let age = age.max(TimeDelta::zero()).num_milliseconds() as f64;
    let tau = tau.num_milliseconds() as f64;
    s_min + (T::one() - s_min) * T::lit((-age / tau).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameSpec<T> {
    pub index: usize,
    #[serde(serialize_with = "rfc3339")]
    pub cursor: DateTime<Utc>,
    /// Ideas born at or before the cursor, in scene order.
    pub visible: Vec<String>,
    /// Saturation of each visible idea, aligned with `visible`.
    pub saturation: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Animation<T> {
    pub frames: Vec<FrameSpec<T>>,
    pub warning: Option<String>,
}

/// Evenly spaced cursors from `first` to `last` on whole milliseconds; the
/// final cursor is exactly `last`.
pub fn frame_cursors(first: DateTime<Utc>, last: DateTime<Utc>, count: usize) -> Vec<DateTime<Utc>> {
    if count == 1 {
        return vec![last];
    }
    let span = (last - first).num_milliseconds() as i128;
    (0..count)
        .map(|f| first + TimeDelta::milliseconds((span * f as i128 / (count as i128 - 1)) as i64))
        .collect()
}

pub fn animate<T: Real>(
    nodes: &[IdeaNode<T>],
    frame_count: usize,
    tau: TimeDelta,
    s_min: T,
) -> Result<Animation<T>, NetworkError> {
    if frame_count == 0 {
        return Err(NetworkError::InvalidArgument("frame count must be ≥ 1".into()));
    }
    if tau <= TimeDelta::zero() {
        return Err(NetworkError::InvalidArgument("τ must be positive".into()));
    }
    if !(s_min >= T::zero() && s_min < T::one()) {
        return Err(NetworkError::InvalidArgument("s_min must lie in [0, 1)".into()));
    }
    let Some(first) = nodes.iter().map(|n| n.birth).min() else {
        return Ok(Animation {
            frames: Vec::new(),
            warning: Some("no ideas to animate".into()),
        });
    };
    let last = nodes.iter().map(|n| n.birth).max().expect("non-empty");
    let (cursors, warning) = if first == last && frame_count > 1 {
        (
            vec![last],
            Some(format!(
                "all ideas share one timestamp; emitting 1 frame instead of {frame_count}"
            )),
        )
    } else {
        (frame_cursors(first, last, frame_count), None)
    };
    let frames = cursors
        .into_iter()
        .enumerate()
        .map(|(index, cursor)| {
            let (visible, saturation) = nodes
                .iter()
                .filter(|n| n.birth <= cursor)
                .map(|n| (n.id.clone(), recency_saturation(cursor - n.birth, tau, s_min)))
                .unzip();
            FrameSpec {
                index,
                cursor,
                visible,
                saturation,
            }
        })
        .collect();
    Ok(Animation { frames, warning })
}
