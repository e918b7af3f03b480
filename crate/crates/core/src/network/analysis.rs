use serde::Serialize;

use super::{IdeaNode, NetworkError};
use crate::ingest::{Session, SocialNetwork};
use crate::scalar::{median, Real};

pub const DEFAULT_INNOVATOR_Z: f64 = 3.0;
const MAD_TO_SIGMA: f64 = 1.4826;

/// `|x − median| / (1.4826·MAD)`, falling back to the population standard
/// deviation when the MAD is zero. `None` when both spreads are zero.
pub fn robust_z_scores<T: Real>(values: &[T]) -> Option<Vec<T>> {
    let med = median(values)?;
    let deviations: Vec<T> = values.iter().map(|&v| (v - med).abs()).collect();
    let mad = median(&deviations)?;
    let scale = if mad > T::zero() {
        T::lit(MAD_TO_SIGMA) * mad
    } else {
        let n = T::from_usize_lossy(values.len());
        let mean = values.iter().copied().sum::<T>() / n;
        let var = values.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / n;
        var.sqrt()
    };
    (scale > T::zero()).then(|| deviations.iter().map(|&d| d / scale).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnovatorReport<T> {
    pub threshold: T,
    /// Robust z-score of every node's raw PC1, aligned with the input.
    pub z_scores: Vec<T>,
    pub flagged_ideas: Vec<String>,
    /// Authors of flagged ideas, ascending and deduplicated.
    pub flagged_authors: Vec<usize>,
}

/// Flags ideas whose raw PC1 is a robust-z outlier.
pub fn detect_innovator<T: Real>(nodes: &[IdeaNode<T>], z_threshold: T) -> Result<InnovatorReport<T>, NetworkError> {
    if nodes.len() < 3 {
        return Err(NetworkError::TooFewIdeas {
            needed: 3,
            got: nodes.len(),
        });
    }
    let pc1: Vec<T> = nodes.iter().map(|n| n.raw_pc1).collect();
    let z_scores = robust_z_scores(&pc1).unwrap_or_else(|| vec![T::zero(); nodes.len()]);
    let mut flagged_ideas = Vec::new();
    let mut flagged_authors = Vec::new();
    for (node, &z) in nodes.iter().zip(&z_scores) {
        if z > z_threshold {
            flagged_ideas.push(node.id.clone());
            flagged_authors.push(node.author);
        }
    }
    flagged_authors.sort_unstable();
    flagged_authors.dedup();
    Ok(InnovatorReport {
        threshold: z_threshold,
        z_scores,
        flagged_ideas,
        flagged_authors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborRange<T> {
    pub participant: usize,
    /// `None` when the neighbour posted nothing.
    pub range: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pc1Range<T> {
    pub participant: usize,
    pub min: T,
    pub max: T,
    pub range: T,
    pub neighbors: Vec<NeighborRange<T>>,
}

fn raw_range<T: Real>(nodes: &[IdeaNode<T>], participant: usize) -> Option<(T, T)> {
    nodes
        .iter()
        .filter(|n| n.author == participant)
        .map(|n| n.raw_pc1)
        .fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

/// Spread of a participant's raw PC1 values next to each social neighbour's.
pub fn participant_pc1_range<T: Real>(
    nodes: &[IdeaNode<T>],
    network: &SocialNetwork,
    participant: usize,
) -> Result<Pc1Range<T>, NetworkError> {
    if participant >= network.n() {
        return Err(NetworkError::InvalidParticipant {
            participant,
            n: network.n(),
        });
    }
    let (min, max) = raw_range(nodes, participant).ok_or(NetworkError::NoIdeas(participant))?;
    let neighbors = network
        .neighbors(participant)
        .iter()
        .map(|&p| NeighborRange {
            participant: p,
            range: raw_range(nodes, p).map(|(lo, hi)| hi - lo),
        })
        .collect();
    Ok(Pc1Range {
        participant,
        min,
        max,
        range: max - min,
        neighbors,
    })
}

/// `Σᵢ Σⱼ |xᵢ − xⱼ| / (2n²·mean)`; 0 for empty or all-zero input.
pub fn gini(counts: &[usize]) -> f64 {
    let n = counts.len();
    let total: usize = counts.iter().sum();
    if n == 0 || total == 0 {
        return 0.0;
    }
    let mut abs_sum = 0u128;
    for &a in counts {
        for &b in counts {
            abs_sum += a.abs_diff(b) as u128;
        }
    }
    let mean = total as f64 / n as f64;
    abs_sum as f64 / (2.0 * (n * n) as f64 * mean)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContributionReport {
    pub counts: Vec<usize>,
    pub threshold: usize,
    pub non_contributors: Vec<usize>,
    pub total: usize,
    pub gini: f64,
}

/// Ideas per participant, including zeros; non-contributors post at most
/// `threshold` ideas.
pub fn contribution_counts(session: &Session, threshold: usize) -> ContributionReport {
    let mut counts = vec![0usize; session.network.n()];
    for idea in &session.ideas {
        counts[idea.participant] += 1;
    }
    let non_contributors = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c <= threshold)
        .map(|(p, _)| p)
        .collect();
    ContributionReport {
        total: counts.iter().sum(),
        gini: gini(&counts),
        threshold,
        non_contributors,
        counts,
    }
}
