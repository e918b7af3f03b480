//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_name, MetricChoice, PipelineConfig, Reducer};
use crate::error::CliError;
use crate::stages::{compare_runs, run_synth, Pipeline, SynthArgs};

#[derive(Debug, Parser)]
#[command(name = "ideascope", version, about = "Idea Cloud, Idea Geography and Idea Network views of an ideation log")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags override the config file, which overrides built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// TOML pipeline configuration.
    #[arg(long, global = true, env = "IDEASCOPE_CONFIG")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSONL idea log.
    #[arg(long, global = true)]
    pub ideas: Option<PathBuf>,
    /// Social network JSON.
    #[arg(long, global = true)]
    pub network: Option<PathBuf>,
    /// JSONL expert scores.
    #[arg(long, global = true)]
    pub scores: Option<PathBuf>,
    /// Training threads; 1 is bitwise reproducible.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub epochs: Option<usize>,
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// `pca` or `tsne`.
    #[arg(long, global = true, value_parser = parse_name::<Reducer>)]
    pub reducer: Option<Reducer>,
    /// Fixed cluster count instead of the elbow choice.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Terrain elevation: `utility`, `idea_length` or `custom`.
    #[arg(long, global = true, value_parser = parse_name::<MetricChoice>)]
    pub metric: Option<MetricChoice>,
    /// Animation frames for the network view.
    #[arg(long, global = true)]
    pub frames: Option<usize>,
    /// Participant for trajectory and overlay views.
    #[arg(long, global = true)]
    pub participant: Option<usize>,
    /// Recompute every stage even when cached outputs match.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic session with planted topics.
    Synth(SynthArgs),
    /// Train paragraph vectors for every idea.
    Embed,
    /// Project the vectors to two dimensions.
    Reduce,
    /// Clusters, diversity, trajectories, daily slices and novelty.
    Cloud,
    /// Terrain, peaks and participant overlays.
    Geography,
    /// 3-D network scene, innovators and contribution analysis.
    Network,
    /// Summarize a run, or rank several runs by diversity.
    Report {
        /// Finished run directories to rank by Avg_dis.
        #[arg(long, num_args = 1..)]
        compare: Vec<PathBuf>,
    },
    /// Run every analysis stage in order.
    All,
}

impl GlobalArgs {
    pub fn resolve(&self) -> Result<PipelineConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::load(path)?,
            None => PipelineConfig::default(),
        };
        if let Some(v) = &self.out {
            cfg.out = v.clone();
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.ideas {
            cfg.input.ideas = Some(v.clone());
        }
        if let Some(v) = &self.network {
            cfg.input.network = Some(v.clone());
        }
        if let Some(v) = &self.scores {
            cfg.input.scores = Some(v.clone());
        }
        if let Some(v) = self.workers {
            cfg.embed.workers = v;
        }
        if let Some(v) = self.epochs {
            cfg.embed.epochs = v;
        }
        if let Some(v) = self.dim {
            cfg.embed.dim = v;
        }
        if let Some(v) = self.reducer {
            cfg.reduce.method = v;
        }
        if let Some(v) = self.k {
            cfg.analytics.k = Some(v);
        }
        if let Some(v) = self.metric {
            cfg.geography.metric = v;
        }
        if let Some(v) = self.frames {
            cfg.render.frames = v;
        }
        if let Some(v) = self.participant {
            cfg.render.participant = Some(v);
        }
        Ok(cfg)
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.global.resolve()?;
    let force = cli.global.force;
    match &cli.command {
        Command::Synth(args) => run_synth(args, cfg.seed, &cfg.out),
        Command::Report { compare } if !compare.is_empty() => compare_runs(compare, &cfg.out).map(|_| ()),
        Command::All => Pipeline::new(cfg, force)?.run_all(),
        single => {
            let stage = match single {
                Command::Embed => "embed",
                Command::Reduce => "reduce",
                Command::Cloud => "cloud",
                Command::Geography => "geography",
                Command::Network => "network",
                _ => "report",
            };
            Pipeline::new(cfg, force)?.run(stage).map(|_| ())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("ideascope").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "seed = 3\n[embed]\nepochs = 7\nworkers = 4\n").unwrap();
        let p = path.to_str().unwrap();
        let cli = parse(&["--config", p, "--workers", "1", "embed"]);
        let cfg = cli.global.resolve().unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.embed.epochs, 7);
        assert_eq!(cfg.embed.workers, 1);
    }

    #[test]
    fn global_flags_after_the_subcommand() {
        let cli = parse(&["all", "--seed", "9", "--metric", "idea_length", "--reducer", "tsne"]);
        let cfg = cli.global.resolve().unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.geography.metric, MetricChoice::IdeaLength);
        assert_eq!(cfg.reduce.method, Reducer::Tsne);
    }

    #[test]
    fn bad_enum_value_is_rejected() {
        assert!(Cli::try_parse_from(["ideascope", "--metric", "height", "geography"]).is_err());
    }
}
