use super::{build_vocab, EmbedError, Vocabulary};
use crate::scalar::Real;

/// Deterministic bag-of-words baseline: one L2-normalized TF-IDF row per
/// document, columns in vocabulary order.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfEmbedding<T> {
    pub vocab: Vocabulary,
    pub idf: Vec<T>,
    pub rows: Vec<Vec<T>>,
}

/// `tf` is the raw count, `idf = ln((D + 1) / (df + 1))`. Rows with zero
/// weight (e.g. tokens present in every document) stay zero.
pub fn embed_tfidf<T: Real, S: AsRef<str>>(
    documents: &[Vec<S>],
) -> Result<TfidfEmbedding<T>, EmbedError> {
    if documents.is_empty() {
        return Err(EmbedError::EmptyCorpus);
    }
    let vocab = build_vocab(documents, 1)?;
    let v = vocab.len();
    let mut df = vec![0usize; v];
    let mut counts = Vec::with_capacity(documents.len());
    for doc in documents {
        let mut tf = vec![0usize; v];
        for idx in vocab.encode(doc) {
            tf[idx] += 1;
        }
        for (d, &c) in df.iter_mut().zip(&tf) {
            if c > 0 {
                *d += 1;
            }
        }
        counts.push(tf);
    }
    let n_docs = T::from_usize_lossy(documents.len());
    let idf: Vec<T> = df
        .iter()
        .map(|&d| ((n_docs + T::one()) / (T::from_usize_lossy(d) + T::one())).ln())
        .collect();
    let rows = counts
        .into_iter()
        .map(|tf| {
            let mut row: Vec<T> = tf
                .iter()
                .zip(&idf)
                .map(|(&c, &w)| T::from_usize_lossy(c) * w)
                .collect();
            let norm = row.iter().map(|&x| x * x).sum::<T>().sqrt();
            if norm > T::zero() {
                row.iter_mut().for_each(|x| *x /= norm);
            }
            row
        })
        .collect();
    Ok(TfidfEmbedding { vocab, idf, rows })
}
