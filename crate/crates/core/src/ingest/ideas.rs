use std::collections::HashMap;

use chrono::{DateTime, SecondsFormat, Utc};
use serde_json::{Map, Value};

use super::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdeaKind {
    Daily,
    Final,
}

impl IdeaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdeaKind::Daily => "daily",
            IdeaKind::Final => "final",
        }
    }
}

/// One posted (daily) or submitted (final) idea.
///
/// `scores` holds every expert rating attached to the idea; an empty list
/// means unscored. On the wire `score` is either a single number or an array.
#[derive(Debug, Clone, PartialEq)]
pub struct IdeaRecord {
    pub id: String,
    pub participant: usize,
    pub timestamp: DateTime<Utc>,
    pub text: String,
    pub kind: IdeaKind,
    pub scores: Vec<f64>,
}

impl IdeaRecord {
    pub fn mean_score(&self) -> Option<f64> {
        if self.scores.is_empty() {
            None
        } else {
            Some(self.scores.iter().sum::<f64>() / self.scores.len() as f64)
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("id".into(), Value::from(self.id.clone()));
        obj.insert("participant".into(), Value::from(self.participant));
        obj.insert(
            "t".into(),
            Value::from(self.timestamp.to_rfc3339_opts(SecondsFormat::AutoSi, true)),
        );
        obj.insert("text".into(), Value::from(self.text.clone()));
        obj.insert("kind".into(), Value::from(self.kind.as_str()));
        match self.scores.as_slice() {
            [] => {}
            [s] => {
                obj.insert("score".into(), Value::from(*s));
            }
            many => {
                obj.insert("score".into(), Value::from(many.to_vec()));
            }
        }
        Value::Object(obj)
    }
}

/// Parses a JSONL idea log. Blank lines are skipped; line numbers are 1-based.
pub fn parse_ideas(input: &str) -> Result<Vec<IdeaRecord>, IngestError> {
    let mut out = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw).map_err(|e| IngestError::Json {
            line,
            message: e.to_string(),
        })?;
        let record = parse_record(&value, line)?;
        if let Some(&first_line) = seen.get(&record.id) {
            return Err(IngestError::DuplicateId {
                id: record.id,
                first_line,
                line,
            });
        }
        seen.insert(record.id.clone(), line);
        out.push(record);
    }
    Ok(out)
}

fn parse_record(value: &Value, line: usize) -> Result<IdeaRecord, IngestError> {
    let obj = value.as_object().ok_or(IngestError::NotAnObject { line })?;
    let field = |name: &'static str| -> Result<&Value, IngestError> {
        obj.get(name)
            .filter(|v| !v.is_null())
            .ok_or(IngestError::MissingField { line, field: name })
    };
    let invalid = |field: &'static str, reason: &str| IngestError::InvalidField {
        line,
        field,
        reason: reason.to_string(),
    };

    let id = field("id")?
        .as_str()
        .ok_or_else(|| invalid("id", "expected a string"))?
        .to_string();
    if id.is_empty() {
        return Err(invalid("id", "must not be empty"));
    }
    let participant = field("participant")?
        .as_u64()
        .ok_or_else(|| invalid("participant", "expected a non-negative integer"))?
        as usize;
    let t = field("t")?
        .as_str()
        .ok_or_else(|| invalid("t", "expected an RFC 3339 string"))?;
    let timestamp = DateTime::parse_from_rfc3339(t)
        .map_err(|_| IngestError::Timestamp {
            line,
            value: t.to_string(),
        })?
        .with_timezone(&Utc);
    let text = field("text")?
        .as_str()
        .ok_or_else(|| invalid("text", "expected a string"))?
        .to_string();
    if text.trim().is_empty() {
        return Err(invalid("text", "must not be empty"));
    }
    let kind = match field("kind")?.as_str() {
        Some("daily") => IdeaKind::Daily,
        Some("final") => IdeaKind::Final,
        _ => return Err(invalid("kind", "expected \"daily\" or \"final\"")),
    };
    let scores = match obj.get("score") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| score_value(v).ok_or_else(|| invalid("score", "expected finite numbers ≥ 0")))
            .collect::<Result<Vec<_>, _>>()?,
        Some(v) => vec![score_value(v).ok_or_else(|| invalid("score", "expected a finite number ≥ 0"))?],
    };
    Ok(IdeaRecord {
        id,
        participant,
        timestamp,
        text,
        kind,
        scores,
    })
}

fn score_value(v: &Value) -> Option<f64> {
    v.as_f64().filter(|s| s.is_finite() && *s >= 0.0)
}

/// Serializes records as JSONL, one object per line, in the given order.
pub fn write_ideas(ideas: &[IdeaRecord]) -> String {
    let mut out = String::new();
    for idea in ideas {
        out.push_str(&idea.to_json().to_string());
        out.push('\n');
    }
    out
}
