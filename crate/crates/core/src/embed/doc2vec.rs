//! Paragraph Vector training (PV-DBOW and PV-DM) with negative sampling.
//!
//! For a context vector `h` (the document vector in PV-DBOW, the mean of the
//! document and window word vectors in PV-DM), an observed token `w` and
//! noise tokens `k`, each step descends
//!
//! ```text
//! L = -log σ(h·u_w) - Σ_k log σ(-h·u_k)
//! ```
//!
//! with a learning rate decaying linearly from `alpha` to `min_alpha` over all
//! token steps of the run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_vocab, tokenize, EmbedError, Vocabulary};
use crate::scalar::{dot, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Distributed bag of words: the document vector alone predicts each token.
    PvDbow,
    /// Distributed memory: document and window words jointly predict the center token.
    PvDm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Hyperparameters {
    pub mode: Mode,
    pub dim: usize,
    pub window: usize,
    pub negative: usize,
    pub epochs: usize,
    pub alpha: f64,
    pub min_alpha: f64,
    pub min_count: u64,
    /// 1 trains sequentially and is bitwise reproducible. More workers
    /// train document shards concurrently and average shared weights per
    /// epoch, which gives different (though still seed-stable) vectors.
    pub workers: usize,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Self {
            mode: Mode::PvDbow,
            dim: 400,
            window: 5,
            negative: 5,
            epochs: 100,
            alpha: 0.025,
            min_alpha: 0.0001,
            min_count: 1,
            workers: 1,
        }
    }
}

impl Hyperparameters {
    fn validate(&self) -> Result<(), EmbedError> {
        let bad = |m: &str| Err(EmbedError::InvalidHyperparameter(m.to_string()));
        if self.dim == 0 {
            return bad("dim must be ≥ 1");
        }
        if self.epochs == 0 {
            return bad("epochs must be ≥ 1");
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return bad("alpha must be finite and > 0");
        }
        if !(self.min_alpha >= 0.0 && self.min_alpha <= self.alpha) {
            return bad("min_alpha must lie in [0, alpha]");
        }
        if self.workers == 0 {
            return bad("workers must be ≥ 1");
        }
        if self.mode == Mode::PvDm && self.window == 0 {
            return bad("PV-DM needs window ≥ 1");
        }
        Ok(())
    }
}

/// Trained Paragraph Vector state. Matrices are row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel<T> {
    pub hyper: Hyperparameters,
    pub seed: u64,
    vocab: Vocabulary,
    word_vectors: Vec<T>,
    output_vectors: Vec<T>,
    doc_vectors: Vec<T>,
    epoch_losses: Vec<f64>,
}

impl<T: Real> EmbeddingModel<T> {
    pub(crate) fn from_parts(
        hyper: Hyperparameters,
        seed: u64,
        vocab: Vocabulary,
        word_vectors: Vec<T>,
        output_vectors: Vec<T>,
        doc_vectors: Vec<T>,
    ) -> Result<Self, EmbedError> {
        let d = hyper.dim;
        if word_vectors.len() != vocab.len() * d
            || output_vectors.len() != vocab.len() * d
            || doc_vectors.len() % d != 0
        {
            return Err(EmbedError::Format("matrix shape mismatch".into()));
        }
        Ok(Self {
            hyper,
            seed,
            vocab,
            word_vectors,
            output_vectors,
            doc_vectors,
            epoch_losses: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.hyper.dim
    }

    pub fn n_docs(&self) -> usize {
        self.doc_vectors.len() / self.hyper.dim
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn doc_vector(&self, index: usize) -> &[T] {
        let d = self.hyper.dim;
        &self.doc_vectors[index * d..(index + 1) * d]
    }

    pub fn doc_vectors(&self) -> Vec<Vec<T>> {
        self.doc_vectors
            .chunks(self.hyper.dim)
            .map(<[T]>::to_vec)
            .collect()
    }

    pub fn word_vector(&self, index: usize) -> &[T] {
        let d = self.hyper.dim;
        &self.word_vectors[index * d..(index + 1) * d]
    }

    pub(crate) fn raw_matrices(&self) -> (&[T], &[T], &[T]) {
        (&self.word_vectors, &self.output_vectors, &self.doc_vectors)
    }

    /// Mean training loss per token step, one entry per epoch.
    pub fn epoch_losses(&self) -> &[f64] {
        &self.epoch_losses
    }
}

#[inline]
fn sigmoid<T: Real>(x: T) -> T {
    T::one() / (T::one() + (-x).exp())
}

/// `ln(1 + e^x)` without overflow.
#[inline]
fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Loss term and derivative with respect to the score `h·u` for one target.
#[inline]
fn ns_term<T: Real>(score: T, positive: bool) -> (T, T) {
    let s = sigmoid(score);
    if positive {
        (softplus(-score), s - T::one())
    } else {
        (softplus(score), s)
    }
}

pub fn negative_sampling_loss<T: Real>(context: &[T], positive: &[T], negatives: &[&[T]]) -> T {
    let mut loss = ns_term(dot(context, positive), true).0;
    for neg in negatives {
        loss += ns_term(dot(context, neg), false).0;
    }
    loss
}

/// Analytic gradient of [`negative_sampling_loss`].
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeSamplingGradient<T> {
    pub context: Vec<T>,
    pub positive: Vec<T>,
    pub negatives: Vec<Vec<T>>,
}

pub fn negative_sampling_gradient<T: Real>(
    context: &[T],
    positive: &[T],
    negatives: &[&[T]],
) -> NegativeSamplingGradient<T> {
    let mut grad_context = vec![T::zero(); context.len()];
    let mut target_grad = |row: &[T], label: bool| {
        let g = ns_term(dot(context, row), label).1;
        for (gc, &r) in grad_context.iter_mut().zip(row) {
            *gc += g * r;
        }
        context.iter().map(|&c| g * c).collect::<Vec<T>>()
    };
    let positive_grad = target_grad(positive, true);
    let negative_grads = negatives.iter().map(|n| target_grad(n, false)).collect();
    NegativeSamplingGradient {
        context: grad_context,
        positive: positive_grad,
        negatives: negative_grads,
    }
}

/// Draws token indices with probability proportional to `count^0.75`.
struct NoiseSampler {
    cumulative: Vec<f64>,
}

impl NoiseSampler {
    fn new(counts: &[u64]) -> Self {
        let mut acc = 0.0;
        let cumulative = counts
            .iter()
            .map(|&c| {
                acc += (c as f64).powf(0.75);
                acc
            })
            .collect();
        Self { cumulative }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().expect("non-empty vocabulary");
        let u = rng.random::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

struct Schedule {
    alpha: f64,
    min_alpha: f64,
    total: u64,
    step: u64,
}

impl Schedule {
    fn next<T: Real>(&mut self) -> T {
        let frac = self.step as f64 / self.total.max(1) as f64;
        self.step += 1;
        T::lit(self.alpha - (self.alpha - self.min_alpha) * frac)
    }
}

/// Mutable parameter views used by one training or inference pass.
struct Weights<'a, T> {
    words: &'a mut [T],
    outputs: &'a mut [T],
    update_words: bool,
    update_outputs: bool,
}

struct Scratch<T> {
    hidden: Vec<T>,
    grad: Vec<T>,
    targets: Vec<(usize, bool)>,
    context: Vec<usize>,
}

impl<T: Real> Scratch<T> {
    fn new(dim: usize) -> Self {
        Self {
            hidden: vec![T::zero(); dim],
            grad: vec![T::zero(); dim],
            targets: Vec::new(),
            context: Vec::new(),
        }
    }
}

struct Pass<'a> {
    mode: Mode,
    dim: usize,
    window: usize,
    negative: usize,
    noise: &'a NoiseSampler,
}

impl Pass<'_> {
    /// One sweep over a document's tokens; returns the summed loss.
    fn document<T: Real>(
        &self,
        doc: &mut [T],
        tokens: &[usize],
        w: &mut Weights<'_, T>,
        rng: &mut ChaCha8Rng,
        schedule: &mut Schedule,
        s: &mut Scratch<T>,
    ) -> T {
        let dim = self.dim;
        let mut loss = T::zero();
        for (pos, &token) in tokens.iter().enumerate() {
            let lr: T = schedule.next();
            s.targets.clear();
            s.targets.push((token, true));
            for _ in 0..self.negative {
                if let Some(k) = (0..10).map(|_| self.noise.sample(rng)).find(|&k| k != token) {
                    s.targets.push((k, false));
                }
            }

            s.context.clear();
            match self.mode {
                Mode::PvDbow => s.hidden.copy_from_slice(doc),
                Mode::PvDm => {
                    let lo = pos.saturating_sub(self.window);
                    let hi = (pos + self.window).min(tokens.len() - 1);
                    s.context
                        .extend((lo..=hi).filter(|&j| j != pos).map(|j| tokens[j]));
                    s.hidden.copy_from_slice(doc);
                    for &c in &s.context {
                        for (h, &v) in s.hidden.iter_mut().zip(&w.words[c * dim..(c + 1) * dim]) {
                            *h += v;
                        }
                    }
                    let inv = T::one() / T::from_usize_lossy(1 + s.context.len());
                    s.hidden.iter_mut().for_each(|h| *h *= inv);
                }
            }

            s.grad.iter_mut().for_each(|g| *g = T::zero());
            for &(target, label) in &s.targets {
                let row = &mut w.outputs[target * dim..(target + 1) * dim];
                let (l, g) = ns_term(dot(&s.hidden, row), label);
                loss += l;
                for i in 0..dim {
                    s.grad[i] += g * row[i];
                }
                if w.update_outputs {
                    for i in 0..dim {
                        row[i] -= lr * g * s.hidden[i];
                    }
                }
            }

            // Back through the context mean (identity for PV-DBOW).
            let share = lr / T::from_usize_lossy(1 + s.context.len());
            for (d, &g) in doc.iter_mut().zip(&s.grad) {
                *d -= share * g;
            }
            if w.update_words {
                for &c in &s.context {
                    for (v, &g) in w.words[c * dim..(c + 1) * dim].iter_mut().zip(&s.grad) {
                        *v -= share * g;
                    }
                }
            }
        }
        loss
    }
}

fn uniform_init<T: Real>(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> Vec<T> {
    let bound = 0.5 / dim as f64;
    (0..len)
        .map(|_| T::lit(rng.random_range(-bound..=bound)))
        .collect()
}

/// Trains a Paragraph Vector model with one vector per input document.
pub fn train_doc2vec<T: Real, S: AsRef<str>>(
    documents: &[Vec<S>],
    hyper: &Hyperparameters,
    seed: u64,
) -> Result<EmbeddingModel<T>, EmbedError> {
    hyper.validate()?;
    if documents.len() < 2 {
        return Err(EmbedError::TooFewDocuments {
            needed: 2,
            got: documents.len(),
        });
    }
    let vocab = build_vocab(documents, hyper.min_count)?;
    let encoded: Vec<Vec<usize>> = documents.iter().map(|d| vocab.encode(d)).collect();
    if let Some(index) = encoded.iter().position(Vec::is_empty) {
        return Err(EmbedError::EmptyDocument { index });
    }

    let dim = hyper.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = uniform_init::<T>(&mut rng, vocab.len() * dim, dim);
    let mut docs = uniform_init::<T>(&mut rng, encoded.len() * dim, dim);
    let mut outputs = vec![T::zero(); vocab.len() * dim];

    let noise = NoiseSampler::new(vocab.counts());
    let pass = Pass {
        mode: hyper.mode,
        dim,
        window: hyper.window,
        negative: hyper.negative,
        noise: &noise,
    };
    let tokens_per_epoch: u64 = encoded.iter().map(|d| d.len() as u64).sum();
    let total = tokens_per_epoch * hyper.epochs as u64;
    let update_words = hyper.mode == Mode::PvDm;

    let mut epoch_losses = Vec::with_capacity(hyper.epochs);
    if hyper.workers == 1 {
        let mut schedule = Schedule {
            alpha: hyper.alpha,
            min_alpha: hyper.min_alpha,
            total,
            step: 0,
        };
        let mut scratch = Scratch::new(dim);
        for epoch in 0..hyper.epochs {
            let mut weights = Weights {
                words: &mut words,
                outputs: &mut outputs,
                update_words,
                update_outputs: true,
            };
            let mut loss = T::zero();
            for (doc, tokens) in docs.chunks_mut(dim).zip(&encoded) {
                loss += pass.document(doc, tokens, &mut weights, &mut rng, &mut schedule, &mut scratch);
            }
            let mean = loss.as_f64() / tokens_per_epoch as f64;
            if !mean.is_finite() {
                return Err(EmbedError::NonFiniteLoss { epoch });
            }
            epoch_losses.push(mean);
        }
    } else {
        for epoch in 0..hyper.epochs {
            let loss = sharded_epoch(
                &pass,
                hyper,
                seed,
                epoch,
                &encoded,
                &mut docs,
                &mut words,
                &mut outputs,
                total,
                tokens_per_epoch,
            );
            let mean = loss.as_f64() / tokens_per_epoch as f64;
            if !mean.is_finite() {
                return Err(EmbedError::NonFiniteLoss { epoch });
            }
            epoch_losses.push(mean);
        }
    }

    let mut model = EmbeddingModel::from_parts(hyper.clone(), seed, vocab, words, outputs, docs)?;
    model.epoch_losses = epoch_losses;
    Ok(model)
}

/// One epoch with documents split into contiguous shards, one per worker.
/// Each worker owns its shard's document vectors and a private copy of the
/// shared word/output weights; the copies are averaged when all finish.
#[allow(clippy::too_many_arguments)]
fn sharded_epoch<T: Real>(
    pass: &Pass<'_>,
    hyper: &Hyperparameters,
    seed: u64,
    epoch: usize,
    encoded: &[Vec<usize>],
    docs: &mut [T],
    words: &mut [T],
    outputs: &mut [T],
    total: u64,
    tokens_per_epoch: u64,
) -> T {
    let dim = hyper.dim;
    let workers = hyper.workers.min(encoded.len());
    let per = encoded.len().div_ceil(workers);
    let update_words = hyper.mode == Mode::PvDm;

    let results: Vec<(T, Vec<T>, Vec<T>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        let mut token_offset = epoch as u64 * tokens_per_epoch;
        for (w, (doc_shard, tok_shard)) in docs
            .chunks_mut(per * dim)
            .zip(encoded.chunks(per))
            .enumerate()
        {
            let mut local_words = words.to_vec();
            let mut local_outputs = outputs.to_vec();
            let start = token_offset;
            token_offset += tok_shard.iter().map(|d| d.len() as u64).sum::<u64>();
            handles.push(scope.spawn(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ ((epoch as u64) << 32) ^ (w as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                );
                let mut schedule = Schedule {
                    alpha: hyper.alpha,
                    min_alpha: hyper.min_alpha,
                    total,
                    step: start,
                };
                let mut scratch = Scratch::new(dim);
                let mut weights = Weights {
                    words: &mut local_words,
                    outputs: &mut local_outputs,
                    update_words,
                    update_outputs: true,
                };
                let mut loss = T::zero();
                for (doc, tokens) in doc_shard.chunks_mut(dim).zip(tok_shard) {
                    loss += pass.document(doc, tokens, &mut weights, &mut rng, &mut schedule, &mut scratch);
                }
                (loss, local_words, local_outputs)
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("training worker panicked"))
            .collect()
    });

    let inv = T::one() / T::from_usize_lossy(results.len());
    words.iter_mut().for_each(|v| *v = T::zero());
    outputs.iter_mut().for_each(|v| *v = T::zero());
    let mut loss = T::zero();
    for (l, w, o) in &results {
        loss += *l;
        for (dst, &src) in words.iter_mut().zip(w) {
            *dst += src * inv;
        }
        for (dst, &src) in outputs.iter_mut().zip(o) {
            *dst += src * inv;
        }
    }
    loss
}

/// Fits a fresh document vector for `text` against frozen word and output
/// weights.
pub fn infer_vector<T: Real>(
    model: &EmbeddingModel<T>,
    text: &str,
    epochs: usize,
    seed: u64,
) -> Result<Vec<T>, EmbedError> {
    if epochs == 0 {
        return Err(EmbedError::InvalidHyperparameter("epochs must be ≥ 1".into()));
    }
    let tokens = model.vocab.encode(&tokenize(text));
    if tokens.is_empty() {
        return Err(EmbedError::NoKnownTokens {
            document: text.to_string(),
        });
    }
    let dim = model.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc = uniform_init::<T>(&mut rng, dim, dim);
    let noise = NoiseSampler::new(model.vocab.counts());
    let pass = Pass {
        mode: model.hyper.mode,
        dim,
        window: model.hyper.window,
        negative: model.hyper.negative,
        noise: &noise,
    };
    let mut schedule = Schedule {
        alpha: model.hyper.alpha,
        min_alpha: model.hyper.min_alpha,
        total: (tokens.len() * epochs) as u64,
        step: 0,
    };
    // Frozen weights: work on copies that are never written.
    let mut words = model.word_vectors.clone();
    let mut outputs = model.output_vectors.clone();
    let mut weights = Weights {
        words: &mut words,
        outputs: &mut outputs,
        update_words: false,
        update_outputs: false,
    };
    let mut scratch = Scratch::new(dim);
    for _ in 0..epochs {
        pass.document(&mut doc, &tokens, &mut weights, &mut rng, &mut schedule, &mut scratch);
    }
    Ok(doc)
}
