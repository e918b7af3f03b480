use chrono::{TimeDelta, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_ring_lattice, validate_session, IdeaKind, IdeaRecord, IngestError, Session, SocialNetwork};

const THEMES: &[&[&str]] = &[
    &[
        "headphones", "earbuds", "wireless", "bluetooth", "speaker", "microphone", "stereo",
        "amplifier", "headset", "audio", "cable", "noise",
    ],
    &[
        "horse", "carriage", "bicycle", "car", "engine", "hybrid", "electric", "driving",
        "train", "wheel", "hovercar", "fuel",
    ],
    &[
        "film", "camera", "lens", "polaroid", "digital", "shutter", "photo", "slr", "flash",
        "tripod", "sensor", "zoom",
    ],
    &[
        "handwriting", "typewriter", "printing", "press", "books", "ebooks", "paper", "ink",
        "printer", "scroll", "reader", "publish",
    ],
    &[
        "mainframe", "minicomputer", "workstation", "laptop", "tablet", "processor", "keyboard",
        "monitor", "server", "chip", "memory", "cloud",
    ],
    &[
        "lantern", "candle", "bulb", "tubelight", "led", "lamp", "switch", "dimmer", "torch",
        "neon", "filament", "glow",
    ],
];

/// Parameters of the synthetic session generator.
///
/// Every contributing participant posts `ideas_per_day` daily ideas on each
/// day and `final_ideas` scored final ideas on the last day. Each idea is an
/// arrow chain whose words come from exactly one topic vocabulary; topic
/// vocabularies are pairwise disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub participants: usize,
    pub days: usize,
    pub topics: usize,
    pub seed: u64,
    pub ideas_per_day: usize,
    pub final_ideas: usize,
    /// Fraction of participants (rounded to nearest) who post nothing.
    pub non_contributor_fraction: f64,
    pub words_per_topic: usize,
    pub ring_degree: usize,
}

impl SynthConfig {
    pub fn new(participants: usize, days: usize, topics: usize, seed: u64) -> Self {
        Self {
            participants,
            days,
            topics,
            seed,
            ideas_per_day: 1,
            final_ideas: 1,
            non_contributor_fraction: 0.0,
            words_per_topic: 8,
            ring_degree: 4,
        }
    }

    pub fn non_contributors(mut self, fraction: f64) -> Self {
        self.non_contributor_fraction = fraction;
        self
    }

    pub fn ideas_per_day(mut self, count: usize) -> Self {
        self.ideas_per_day = count;
        self
    }

    pub fn final_ideas(mut self, count: usize) -> Self {
        self.final_ideas = count;
        self
    }
}

/// Vocabulary of `topic`: themed words for the first few topics, generated
/// tokens beyond that. Disjoint across topics.
pub fn topic_vocabulary(topic: usize, size: usize) -> Vec<String> {
    (0..size)
        .map(|j| match THEMES.get(topic).and_then(|t| t.get(j)) {
            Some(w) => (*w).to_string(),
            None => format!("t{topic}w{j}"),
        })
        .collect()
}

pub fn synth_session(cfg: &SynthConfig) -> Result<Session, IngestError> {
    if cfg.participants == 0 || cfg.days == 0 || cfg.topics == 0 || cfg.words_per_topic == 0 {
        return Err(IngestError::InvalidArgument(
            "participants, days, topics and words_per_topic must be ≥ 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&cfg.non_contributor_fraction) {
        return Err(IngestError::InvalidArgument(
            "non-contributor fraction must lie in [0, 1]".into(),
        ));
    }
    let n = cfg.participants;
    let network = synth_network(n, cfg.ring_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let vocab: Vec<Vec<String>> = (0..cfg.topics)
        .map(|t| topic_vocabulary(t, cfg.words_per_topic))
        .collect();

    let silent = (cfg.non_contributor_fraction * n as f64).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut is_silent = vec![false; n];
    for &p in &order[..silent] {
        is_silent[p] = true;
    }
    let home_topic: Vec<usize> = (0..n).map(|_| rng.random_range(0..cfg.topics)).collect();
    // Per-topic quality level so utility terrains have structure.
    let topic_quality: Vec<f64> = (0..cfg.topics).map(|_| rng.random_range(3.0..8.0)).collect();

    let start = Utc.with_ymd_and_hms(2019, 3, 1, 0, 0, 0).unwrap();
    let day_secs = 86_400i64;
    let mut ideas = Vec::new();
    let mut first = true;
    for day in 0..cfg.days {
        for p in (0..n).filter(|&p| !is_silent[p]) {
            for j in 0..cfg.ideas_per_day {
                let topic = pick_topic(&mut rng, home_topic[p], cfg.topics);
                let offset = if first { 0 } else { rng.random_range(0..day_secs - 3_600) };
                first = false;
                ideas.push(IdeaRecord {
                    id: format!("d{day}-p{p}-{j}"),
                    participant: p,
                    timestamp: start + TimeDelta::seconds(day as i64 * day_secs + offset),
                    text: idea_text(&mut rng, &vocab[topic]),
                    kind: IdeaKind::Daily,
                    scores: Vec::new(),
                });
            }
        }
    }
    let last_day = (cfg.days as i64 - 1) * day_secs;
    for p in (0..n).filter(|&p| !is_silent[p]) {
        for j in 0..cfg.final_ideas {
            let topic = pick_topic(&mut rng, home_topic[p], cfg.topics);
            let base = topic_quality[topic];
            let scores = (0..2)
                .map(|_| {
                    let s: f64 = base + rng.random_range(-1.5..1.5);
                    (s.clamp(1.0, 10.0) * 2.0).round() / 2.0
                })
                .collect();
            ideas.push(IdeaRecord {
                id: format!("f-p{p}-{j}"),
                participant: p,
                timestamp: start + TimeDelta::seconds(last_day + day_secs - 1_800 + j as i64),
                text: idea_text(&mut rng, &vocab[topic]),
                kind: IdeaKind::Final,
                scores,
            });
        }
    }
    validate_session(ideas, network, TimeDelta::hours(24))
}

fn synth_network(n: usize, degree: usize) -> Result<SocialNetwork, IngestError> {
    let mut d = degree.max(2) & !1;
    while d >= 2 && n < d + 1 {
        d -= 2;
    }
    if d >= 2 {
        build_ring_lattice(n, d)
    } else if n == 2 {
        SocialNetwork::from_edges(2, [(0, 1)], None)
    } else {
        SocialNetwork::from_edges(n, [], None)
    }
}

fn pick_topic(rng: &mut ChaCha8Rng, home: usize, topics: usize) -> usize {
    if rng.random_bool(0.75) {
        home
    } else {
        rng.random_range(0..topics)
    }
}

fn idea_text(rng: &mut ChaCha8Rng, words: &[String]) -> String {
    let stages = rng.random_range(2..=5);
    (0..stages)
        .map(|_| {
            let k = rng.random_range(1..=2);
            (0..k)
                .map(|_| words[rng.random_range(0..words.len())].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("→")
}
