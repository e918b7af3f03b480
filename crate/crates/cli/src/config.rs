//! Pipeline configuration: TOML file, then command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};

use ideascope_core::dimred::TsneConfig;
use ideascope_core::embed::Hyperparameters;
use ideascope_core::network::LinkPolicy;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub out: PathBuf,
    pub input: InputConfig,
    pub embed: Hyperparameters,
    pub reduce: ReduceConfig,
    pub analytics: AnalyticsConfig,
    pub geography: GeographyConfig,
    pub network: NetworkConfig,
    pub render: RenderConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            out: PathBuf::from("ideascope-out"),
            input: InputConfig::default(),
            embed: Hyperparameters::default(),
            reduce: ReduceConfig::default(),
            analytics: AnalyticsConfig::default(),
            geography: GeographyConfig::default(),
            network: NetworkConfig::default(),
            render: RenderConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputConfig {
    /// JSONL idea records.
    pub ideas: Option<PathBuf>,
    /// Social network JSON.
    pub network: Option<PathBuf>,
    /// Optional JSONL `{"id", "score"}` records, one per expert rating.
    pub scores: Option<PathBuf>,
    pub day_length_hours: f64,
}

impl Default for InputConfig {
    fn default() -> Self {
        Self {
            ideas: None,
            network: None,
            scores: None,
            day_length_hours: 24.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducer {
    Pca,
    Tsne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReduceConfig {
    pub method: Reducer,
    /// Warn when PC1 + PC2 explain less than this share of the variance.
    pub variance_floor: f64,
    pub tsne: TsneConfig,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        Self {
            method: Reducer::Pca,
            variance_floor: 0.5,
            tsne: TsneConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyticsConfig {
    pub k_max: usize,
    /// Fixed k instead of the elbow choice.
    pub k: Option<usize>,
    pub novelty_quantile: f64,
}

impl Default for AnalyticsConfig {
    fn default() -> Self {
        Self {
            k_max: 8,
            k: None,
            novelty_quantile: 0.95,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricChoice {
    Utility,
    IdeaLength,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthChoice {
    Stages,
    Tokens,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterpolationChoice {
    NadarayaWatson,
    InverseDistance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeographyConfig {
    pub metric: MetricChoice,
    pub length_mode: LengthChoice,
    /// JSONL `{"id", "score"}` elevations for `metric = "custom"`.
    pub custom_values: Option<PathBuf>,
    pub resolution: usize,
    pub bandwidth: f64,
    pub min_prominence: f64,
    pub interpolation: InterpolationChoice,
    pub idw_power: f64,
}

impl Default for GeographyConfig {
    fn default() -> Self {
        Self {
            metric: MetricChoice::Utility,
            length_mode: LengthChoice::Stages,
            custom_values: None,
            resolution: 100,
            bandwidth: 0.05,
            min_prominence: 0.1,
            interpolation: InterpolationChoice::NadarayaWatson,
            idw_power: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkConfig {
    pub tau_hours: f64,
    pub s_min: f64,
    pub link_policy: LinkPolicy,
    pub z_threshold: f64,
    /// Participants with at most this many ideas count as non-contributors.
    pub contribution_threshold: usize,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            tau_hours: 24.0,
            s_min: 0.2,
            link_policy: LinkPolicy::MostRecent,
            z_threshold: 3.0,
            contribution_threshold: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderConfig {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub azimuth: f64,
    pub elevation: f64,
    pub scale: f64,
    /// Animation frames for the network stage; 0 renders none.
    pub frames: usize,
    pub levels: usize,
    /// Participant for the trajectory and overlay views; defaults to the
    /// longest trajectory and the best-scoring participant.
    pub participant: Option<usize>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            width: 640.0,
            height: 640.0,
            margin: 48.0,
            azimuth: 0.0,
            elevation: 0.35,
            scale: 220.0,
            frames: 0,
            levels: 10,
            participant: None,
        }
    }
}

/// Parses a kebab/snake-case name the same way the config file does.
pub fn parse_name<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if !(self.input.day_length_hours > 0.0 && self.input.day_length_hours.is_finite()) {
            return bad(format!("input.day_length_hours must be positive, got {}", self.input.day_length_hours));
        }
        if self.reduce.variance_floor < 0.0 || self.reduce.variance_floor > 1.0 {
            return bad("reduce.variance_floor must lie in [0, 1]".into());
        }
        if self.analytics.k_max < 2 {
            return bad("analytics.k_max must be ≥ 2".into());
        }
        if self.analytics.k == Some(0) {
            return bad("analytics.k must be ≥ 1".into());
        }
        let q = self.analytics.novelty_quantile;
        if !(q > 0.0 && q <= 1.0) {
            return bad(format!("analytics.novelty_quantile must lie in (0, 1], got {q}"));
        }
        let g = &self.geography;
        if g.resolution < 2 {
            return bad("geography.resolution must be ≥ 2".into());
        }
        if !(g.bandwidth > 0.0 && g.bandwidth.is_finite()) {
            return bad("geography.bandwidth must be positive".into());
        }
        if g.min_prominence < 0.0 {
            return bad("geography.min_prominence must be ≥ 0".into());
        }
        if g.metric == MetricChoice::Custom && g.custom_values.is_none() {
            return bad("geography.metric = \"custom\" needs geography.custom_values".into());
        }
        let n = &self.network;
        if !(n.tau_hours > 0.0 && n.tau_hours.is_finite()) {
            return bad("network.tau_hours must be positive".into());
        }
        if !(0.0..1.0).contains(&n.s_min) {
            return bad("network.s_min must lie in [0, 1)".into());
        }
        if self.render.levels < 1 {
            return bad("render.levels must be ≥ 1".into());
        }
        Ok(())
    }
}
