use std::fs;
use std::path::Path;

use clap::Args;
use ideascope_core::ingest::{synth_session, write_ideas, SynthConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 25)]
    pub participants: usize,
    #[arg(long, default_value_t = 4)]
    pub days: usize,
    #[arg(long, default_value_t = 3)]
    pub topics: usize,
    #[arg(long, default_value_t = 1)]
    pub ideas_per_day: usize,
    #[arg(long, default_value_t = 1)]
    pub final_ideas: usize,
    /// Fraction of participants who post nothing.
    #[arg(long, default_value_t = 0.0)]
    pub non_contributors: f64,
}

/// Writes `ideas.jsonl` and `network.json` for a planted-topic session.
pub fn run_synth(args: &SynthArgs, seed: u64, out: &Path) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&args.non_contributors) {
        return Err(CliError::Validation("--non-contributors must lie in [0, 1]".into()));
    }
    let cfg = SynthConfig::new(args.participants, args.days, args.topics, seed)
        .non_contributors(args.non_contributors)
        .ideas_per_day(args.ideas_per_day)
        .final_ideas(args.final_ideas);
    let session = synth_session(&cfg)?;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let ideas = out.join("ideas.jsonl");
    fs::write(&ideas, write_ideas(&session.ideas)).map_err(|e| CliError::io(&ideas, e))?;
    let network = out.join("network.json");
    let mut text = serde_json::to_string_pretty(&session.network.to_json()).expect("network serializes");
    text.push('\n');
    fs::write(&network, text).map_err(|e| CliError::io(&network, e))?;
    println!(
        "synth: {} ideas from {} participants -> {}",
        session.ideas.len(),
        session.network.n(),
        out.display()
    );
    Ok(())
}
