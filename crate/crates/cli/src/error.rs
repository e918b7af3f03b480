use std::path::PathBuf;

use ideascope_core::{analytics, dimred, embed, geography, ingest, network, render};
use thiserror::Error;

/// Failures grouped by exit code: 1 for bad input or configuration, 2 for
/// file system trouble, 3 for numerical breakdown.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{} not found; run `ideascope {stage}` first", path.display())]
    MissingArtifact { path: PathBuf, stage: &'static str },
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io { .. } | CliError::MissingArtifact { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<ingest::IngestError> for CliError {
    fn from(e: ingest::IngestError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<embed::EmbedError> for CliError {
    fn from(e: embed::EmbedError) -> Self {
        use embed::EmbedError as E;
        match e {
            E::NonFiniteLoss { .. } => CliError::Numerical(e.to_string()),
            E::Io(source) => CliError::io("model", source),
            E::Csv(_) => CliError::io("vectors.csv", std::io::Error::other(e.to_string())),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<dimred::DimredError> for CliError {
    fn from(e: dimred::DimredError) -> Self {
        use dimred::DimredError as E;
        match e {
            E::NoConvergence | E::NonFiniteKl { .. } => CliError::Numerical(e.to_string()),
            E::Csv(_) => CliError::io("projections.csv", std::io::Error::other(e.to_string())),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<analytics::AnalyticsError> for CliError {
    fn from(e: analytics::AnalyticsError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<geography::GeographyError> for CliError {
    fn from(e: geography::GeographyError) -> Self {
        match e {
            geography::GeographyError::NoScoredIdeas => CliError::Validation(
                "no idea carries an evaluation score; pass --scores or use --metric idea_length".into(),
            ),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<network::NetworkError> for CliError {
    fn from(e: network::NetworkError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<render::RenderError> for CliError {
    fn from(e: render::RenderError) -> Self {
        match e {
            render::RenderError::Io { path, source } => CliError::io(path, source),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_kind() {
        assert_eq!(CliError::Validation("x".into()).exit_code(), 1);
        assert_eq!(CliError::io("a", std::io::Error::other("b")).exit_code(), 2);
        assert_eq!(CliError::Numerical("nan".into()).exit_code(), 3);
        let e: CliError = embed::EmbedError::NonFiniteLoss { epoch: 3 }.into();
        assert_eq!(e.exit_code(), 3);
        let e: CliError = geography::GeographyError::NoScoredIdeas.into();
        assert!(e.to_string().contains("--metric idea_length"));
    }

    #[test]
    fn missing_artifact_names_the_stage() {
        let e = CliError::MissingArtifact {
            path: "out/projections.csv".into(),
            stage: "reduce",
        };
        assert_eq!(e.to_string(), "out/projections.csv not found; run `ideascope reduce` first");
        assert_eq!(e.exit_code(), 2);
    }
}
