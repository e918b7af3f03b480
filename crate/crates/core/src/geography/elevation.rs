use serde::Serialize;

use crate::embed::{tokenize, ARROW_TOKEN};
use crate::ingest::IdeaRecord;
use crate::scalar::Real;

use super::GeographyError;

/// Per-idea elevation values plus the ideas left out of the terrain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElevationSet<T> {
    pub ids: Vec<String>,
    pub values: Vec<T>,
    pub excluded: Vec<String>,
}

impl<T: Real> ElevationSet<T> {
    pub fn get(&self, id: &str) -> Option<T> {
        self.ids.iter().position(|i| i == id).map(|k| self.values[k])
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Mean expert score per idea; unscored ideas are listed in `excluded`.
pub fn elevation_from_scores<T: Real>(ideas: &[IdeaRecord]) -> Result<ElevationSet<T>, GeographyError> {
    let mut set = ElevationSet {
        ids: Vec::new(),
        values: Vec::new(),
        excluded: Vec::new(),
    };
    for idea in ideas {
        match idea.mean_score() {
            Some(m) => {
                set.ids.push(idea.id.clone());
                set.values.push(T::lit(m));
            }
            None => set.excluded.push(idea.id.clone()),
        }
    }
    if set.ids.is_empty() {
        return Err(GeographyError::NoScoredIdeas);
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthMode {
    /// Transition arrows + 1.
    #[default]
    Stages,
    /// Word tokens, arrows excluded.
    Tokens,
}

pub fn stage_count(text: &str) -> usize {
    tokenize(text).iter().filter(|t| *t == ARROW_TOKEN).count() + 1
}

fn token_count(text: &str) -> usize {
    tokenize(text).iter().filter(|t| *t != ARROW_TOKEN).count()
}

pub fn elevation_from_length<T: Real>(ideas: &[IdeaRecord], mode: LengthMode) -> ElevationSet<T> {
    let measure = match mode {
        LengthMode::Stages => stage_count,
        LengthMode::Tokens => token_count,
    };
    ElevationSet {
        ids: ideas.iter().map(|i| i.id.clone()).collect(),
        values: ideas.iter().map(|i| T::from_usize_lossy(measure(&i.text))).collect(),
        excluded: Vec::new(),
    }
}

fn average_ranks<T: Real>(v: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).expect("finite values"));
    let mut ranks = vec![T::zero(); v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let r = T::from_usize_lossy(i + j) / T::lit(2.0) + T::one();
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties. `None` when fewer
/// than two pairs or either side is constant.
pub fn rank_correlation<T: Real>(x: &[T], y: &[T]) -> Option<T> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = T::from_usize_lossy(x.len());
    let mx = rx.iter().copied().sum::<T>() / n;
    let my = ry.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == T::zero() || syy == T::zero() {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::IdeaKind;
    use chrono::{TimeZone, Utc};

    fn idea(id: &str, text: &str, scores: &[f64]) -> IdeaRecord {
        IdeaRecord {
            id: id.into(),
            participant: 0,
            timestamp: Utc.with_ymd_and_hms(2019, 3, 1, 0, 0, 0).unwrap(),
            text: text.into(),
            kind: IdeaKind::Final,
            scores: scores.to_vec(),
        }
    }

    #[test]
    fn mean_scores_and_exclusions() {
        let mut ideas: Vec<_> = (0..10).map(|i| idea(&format!("s{i}"), "a", &[4.0])).collect();
        ideas[0].scores = vec![3.0, 5.0];
        ideas.extend((0..5).map(|i| idea(&format!("u{i}"), "a", &[])));
        let set: ElevationSet<f64> = elevation_from_scores(&ideas).unwrap();
        assert_eq!(set.len(), 10);
        assert_eq!(set.excluded.len(), 5);
        assert_eq!(set.get("s0"), Some(4.0));
        assert_eq!(set.get("s1"), Some(4.0));
        assert_eq!(
            elevation_from_scores::<f64>(&ideas[10..]),
            Err(GeographyError::NoScoredIdeas)
        );
    }

    #[test]
    fn stage_counts() {
        assert_eq!(stage_count("Abacus → mechanical calculator → electronic calculator"), 3);
        assert_eq!(stage_count("Horse→Carriage→Bicycle→Car→Self Driving Car→Hovercar"), 6);
        assert_eq!(stage_count("just words"), 1);
        let set: ElevationSet<f64> = elevation_from_length(&[idea("a", "x -> y z", &[])], LengthMode::Tokens);
        assert_eq!(set.values, vec![3.0]);
    }

    #[test]
    fn spearman() {
        let r = rank_correlation::<f64>(&[1.0, 2.0, 3.0, 4.0], &[10.0, 20.0, 30.0, 40.0]).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        let r = rank_correlation::<f64>(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap();
        assert!((r + 1.0).abs() < 1e-15);
        assert_eq!(rank_correlation(&[1.0, 1.0], &[1.0, 2.0]), None);
        assert_eq!(average_ranks(&[5.0, 1.0, 5.0]), vec![2.5, 1.0, 2.5]);
    }
}
