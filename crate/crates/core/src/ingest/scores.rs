use std::collections::HashMap;

use serde_json::Value;

use super::{IdeaRecord, IngestError};

/// One expert rating of one idea. An idea may be rated many times.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub id: String,
    pub score: f64,
}

/// Parses JSONL lines of the form `{"id": "...", "score": 4.5}`.
pub fn parse_scores(input: &str) -> Result<Vec<ScoreRecord>, IngestError> {
    let mut out = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw).map_err(|e| IngestError::Json {
            line,
            message: e.to_string(),
        })?;
        let obj = value.as_object().ok_or(IngestError::NotAnObject { line })?;
        let id = obj
            .get("id")
            .ok_or(IngestError::MissingField { line, field: "id" })?
            .as_str()
            .ok_or_else(|| IngestError::InvalidField {
                line,
                field: "id",
                reason: "expected a string".into(),
            })?
            .to_string();
        let score = obj
            .get("score")
            .ok_or(IngestError::MissingField { line, field: "score" })?
            .as_f64()
            .filter(|s| s.is_finite() && *s >= 0.0)
            .ok_or_else(|| IngestError::InvalidField {
                line,
                field: "score",
                reason: "expected a finite number ≥ 0".into(),
            })?;
        out.push(ScoreRecord { id, score });
    }
    Ok(out)
}

/// Appends each rating to the idea it names, in record order.
pub fn attach_scores(ideas: &mut [IdeaRecord], records: &[ScoreRecord]) -> Result<(), IngestError> {
    let index: HashMap<&str, usize> = ideas
        .iter()
        .enumerate()
        .map(|(i, idea)| (idea.id.as_str(), i))
        .collect();
    let mut targets = Vec::with_capacity(records.len());
    for r in records {
        let &i = index.get(r.id.as_str()).ok_or_else(|| {
            IngestError::InvalidArgument(format!("score record for unknown idea `{}`", r.id))
        })?;
        targets.push(i);
    }
    for (i, r) in targets.into_iter().zip(records) {
        ideas[i].scores.push(r.score);
    }
    Ok(())
}
