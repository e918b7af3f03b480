//! Idea text to vectors: tokenizer, vocabulary, Paragraph Vector training
//! with negative sampling, and a TF-IDF baseline.

mod doc2vec;
mod io;
mod tfidf;
mod tokenize;
mod vocab;

pub use doc2vec::{
    infer_vector, negative_sampling_gradient, negative_sampling_loss, train_doc2vec,
    EmbeddingModel, Hyperparameters, Mode, NegativeSamplingGradient,
};
pub use io::{
    load_model, read_vectors_csv, save_model, write_vectors_csv, DocManifest, MODEL_MAGIC,
    MODEL_VERSION,
};
pub use tfidf::{embed_tfidf, TfidfEmbedding};
pub use tokenize::{tokenize, ARROW_TOKEN};
pub use vocab::{build_vocab, Vocabulary};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("empty corpus after vocabulary filtering")]
    EmptyCorpus,
    #[error("need at least {needed} documents, got {got}")]
    TooFewDocuments { needed: usize, got: usize },
    #[error("document {index} has no in-vocabulary tokens")]
    EmptyDocument { index: usize },
    #[error("document `{document}` has no in-vocabulary tokens")]
    NoKnownTokens { document: String },
    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparameter(String),
    #[error("training loss became non-finite in epoch {epoch}; lower the learning rate")]
    NonFiniteLoss { epoch: usize },
    #[error("model file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
