//! Pipeline stages and the cache wrapper around them.

mod cloud;
mod embed;
mod geography;
mod network;
mod reduce;
mod report;
mod synth;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::TimeDelta;
use ideascope_core::ingest::{attach_scores, parse_ideas, parse_network, parse_scores, validate_session, Session};
use ideascope_core::render::CanvasSpec;
use ideascope_core::ProjectionSet;
use serde_json::Value;

use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::manifest::{sha256_file, stage_key, stage_seed, Manifest, StageRecord};

pub use report::compare_runs;
pub use synth::{run_synth, SynthArgs};

pub const VECTORS_FILE: &str = "vectors.csv";
pub const PROJECTIONS_FILE: &str = "projections.csv";
pub const ANALYTICS_FILE: &str = "analytics.json";
pub const GEOGRAPHY_FILE: &str = "geography.json";
pub const NETWORK_ANALYSIS_FILE: &str = "analysis.json";
pub const REPORT_FILE: &str = "report.json";

/// Every analysis stage in pipeline order.
pub const STAGES: [&str; 6] = ["embed", "reduce", "cloud", "geography", "network", "report"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageStatus {
    Ran,
    CacheHit,
}

pub(crate) struct Input {
    role: &'static str,
    path: PathBuf,
    /// Stage that writes this file, for artifacts of earlier stages.
    producer: Option<&'static str>,
}

impl Input {
    pub(crate) fn user(role: &'static str, path: &Path) -> Self {
        Self {
            role,
            path: path.to_path_buf(),
            producer: None,
        }
    }

    pub(crate) fn artifact(role: &'static str, path: PathBuf, producer: &'static str) -> Self {
        Self {
            role,
            path,
            producer: Some(producer),
        }
    }
}

pub(crate) struct StageCtx<'a> {
    pub cfg: &'a PipelineConfig,
    pub out: &'a Path,
    pub seed: u64,
}

impl StageCtx<'_> {
    /// Writes `bytes` to `out/rel` and returns `rel` for the manifest.
    pub fn write(&self, rel: &str, bytes: impl AsRef<[u8]>) -> Result<String, CliError> {
        let path = self.out.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        Ok(rel.to_string())
    }

    pub fn write_json(&self, rel: &str, value: &impl serde::Serialize) -> Result<String, CliError> {
        let mut text = serde_json::to_string_pretty(value).expect("serializable output");
        text.push('\n');
        self.write(rel, text)
    }

    pub fn canvas(&self) -> CanvasSpec {
        let r = &self.cfg.render;
        CanvasSpec {
            width: r.width,
            height: r.height,
            margin: r.margin,
            ..CanvasSpec::default()
        }
    }
}

pub struct Pipeline {
    pub cfg: PipelineConfig,
    pub force: bool,
    manifest: Manifest,
}

impl Pipeline {
    pub fn new(cfg: PipelineConfig, force: bool) -> Result<Self, CliError> {
        cfg.validate()?;
        fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))?;
        let manifest = Manifest::load(&cfg.out, cfg.seed);
        Ok(Self { cfg, force, manifest })
    }

    pub fn out(&self) -> &Path {
        &self.cfg.out
    }

    pub fn run(&mut self, stage: &str) -> Result<StageStatus, CliError> {
        match stage {
            "embed" => embed::run(self),
            "reduce" => reduce::run(self),
            "cloud" => cloud::run(self),
            "geography" => geography::run(self),
            "network" => network::run(self),
            "report" => report::run(self),
            other => Err(CliError::Validation(format!("unknown stage `{other}`"))),
        }
    }

    pub fn run_all(&mut self) -> Result<(), CliError> {
        for stage in STAGES {
            self.run(stage)?;
        }
        Ok(())
    }

    pub(crate) fn artifact(&self, file: &str) -> PathBuf {
        self.out().join(file)
    }

    /// Runs `body` unless the manifest already holds outputs for the same
    /// stage key, then records the outputs' hashes.
    pub(crate) fn cached(
        &mut self,
        stage: &'static str,
        config: Value,
        inputs: &[Input],
        body: impl FnOnce(&StageCtx) -> Result<Vec<String>, CliError>,
    ) -> Result<StageStatus, CliError> {
        let mut hashes = BTreeMap::new();
        for input in inputs {
            if !input.path.exists() {
                return Err(match input.producer {
                    Some(stage) => CliError::MissingArtifact {
                        path: input.path.clone(),
                        stage,
                    },
                    None => CliError::io(&input.path, std::io::Error::from(std::io::ErrorKind::NotFound)),
                });
            }
            hashes.insert(input.role.to_string(), sha256_file(&input.path)?);
        }
        let seed = stage_seed(self.cfg.seed, stage);
        let key = stage_key(stage, seed, &config, &hashes);
        if !self.force && self.manifest.is_fresh(self.out(), stage, &key) {
            println!("{stage}: cache hit");
            return Ok(StageStatus::CacheHit);
        }
        let ctx = StageCtx {
            cfg: &self.cfg,
            out: &self.cfg.out,
            seed,
        };
        let written = body(&ctx)?;
        let mut outputs = BTreeMap::new();
        for rel in written {
            let hash = sha256_file(&self.out().join(&rel))?;
            outputs.insert(rel, hash);
        }
        println!("{stage}: wrote {} files", outputs.len());
        self.manifest.stages.insert(
            stage.to_string(),
            StageRecord {
                key,
                seed,
                config,
                inputs: hashes,
                outputs,
            },
        );
        self.manifest.save(self.out())?;
        Ok(StageStatus::Ran)
    }

    pub(crate) fn ideas_path(&self) -> Result<&Path, CliError> {
        self.cfg
            .input
            .ideas
            .as_deref()
            .ok_or_else(|| CliError::Validation("no idea log given: set input.ideas or pass --ideas".into()))
    }

    pub(crate) fn network_path(&self) -> Result<&Path, CliError> {
        self.cfg
            .input
            .network
            .as_deref()
            .ok_or_else(|| CliError::Validation("no social network given: set input.network or pass --network".into()))
    }

    /// Idea log and network inputs, plus the score file when set.
    pub(crate) fn session_inputs(&self, with_scores: bool) -> Result<Vec<Input>, CliError> {
        let mut v = vec![
            Input::user("ideas", self.ideas_path()?),
            Input::user("network", self.network_path()?),
        ];
        if with_scores {
            if let Some(s) = &self.cfg.input.scores {
                v.push(Input::user("scores", s));
            }
        }
        Ok(v)
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn day_length(hours: f64) -> TimeDelta {
    TimeDelta::milliseconds((hours * 3_600_000.0).round() as i64)
}

pub(crate) fn load_session(cfg: &PipelineConfig) -> Result<Session, CliError> {
    let ideas_path = cfg
        .input
        .ideas
        .as_deref()
        .ok_or_else(|| CliError::Validation("no idea log given".into()))?;
    let network_path = cfg
        .input
        .network
        .as_deref()
        .ok_or_else(|| CliError::Validation("no social network given".into()))?;
    let mut ideas = parse_ideas(&read_text(ideas_path)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", ideas_path.display())))?;
    if let Some(p) = &cfg.input.scores {
        let recs = parse_scores(&read_text(p)?).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
        attach_scores(&mut ideas, &recs)?;
    }
    let network = parse_network(&read_text(network_path)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", network_path.display())))?;
    Ok(validate_session(ideas, network, day_length(cfg.input.day_length_hours))?)
}

pub(crate) fn load_projections(path: &Path) -> Result<ProjectionSet, CliError> {
    let f = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(ideascope_core::dimred::read_projections_csv::<f64, _>(f)?)
}

pub(crate) fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("config serializes")
}

pub(crate) fn csv_bytes(
    f: impl FnOnce(&mut Vec<u8>) -> Result<(), csv::Error>,
) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(|e| CliError::io("csv", std::io::Error::other(e.to_string())))?;
    Ok(buf)
}
