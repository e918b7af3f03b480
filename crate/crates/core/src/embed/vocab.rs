use std::collections::HashMap;

use super::EmbedError;

/// Token table with dense indices ordered by (frequency desc, token asc).
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, usize>,
    min_count: u64,
    total: u64,
}

impl Vocabulary {
    pub(crate) fn from_parts(
        tokens: Vec<String>,
        counts: Vec<u64>,
        min_count: u64,
    ) -> Result<Self, EmbedError> {
        if tokens.len() != counts.len() {
            return Err(EmbedError::Format("vocabulary length mismatch".into()));
        }
        let index: HashMap<String, usize> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        if index.len() != tokens.len() {
            return Err(EmbedError::Format("duplicate vocabulary token".into()));
        }
        let total = counts.iter().sum();
        Ok(Self {
            tokens,
            counts,
            index,
            min_count,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, index: usize) -> &str {
        &self.tokens[index]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts[index]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn min_count(&self) -> u64 {
        self.min_count
    }

    /// Total occurrences of retained tokens.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Maps tokens to indices, dropping out-of-vocabulary ones.
    pub fn encode<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<usize> {
        tokens
            .iter()
            .filter_map(|t| self.index_of(t.as_ref()))
            .collect()
    }
}

pub fn build_vocab<S: AsRef<str>>(
    documents: &[Vec<S>],
    min_count: u64,
) -> Result<Vocabulary, EmbedError> {
    if min_count < 1 {
        return Err(EmbedError::InvalidHyperparameter(
            "min_count must be ≥ 1".into(),
        ));
    }
    let mut freq: HashMap<&str, u64> = HashMap::new();
    for doc in documents {
        for tok in doc {
            *freq.entry(tok.as_ref()).or_default() += 1;
        }
    }
    let mut kept: Vec<(&str, u64)> = freq.into_iter().filter(|&(_, c)| c >= min_count).collect();
    if kept.is_empty() {
        return Err(EmbedError::EmptyCorpus);
    }
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let (tokens, counts) = kept.into_iter().map(|(t, c)| (t.to_string(), c)).unzip();
    Vocabulary::from_parts(tokens, counts, min_count)
}
