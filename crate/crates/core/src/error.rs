//! Crate-wide error type.
//!
//! Variants are grouped by where they surface: corpus parsing, tagger
//! training, corpus alignment, and statistical fitting. The CLI maps these
//! groups onto distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected 2 tab-separated fields at line {line}, got {fields}")]
    FieldCount { line: usize, fields: usize },

    #[error("unknown sentiment label '{label}' at line {line}")]
    UnknownSentiment { label: String, line: usize },

    #[error("unknown tag '{tag}' at line {line}")]
    UnknownTag { tag: String, line: usize },

    #[error("empty text at line {line}")]
    EmptyText { line: usize },

    #[error("empty token at line {line}")]
    EmptyToken { line: usize },

    #[error("token '{token}' contains whitespace at line {line}")]
    TokenWhitespace { token: String, line: usize },

    #[error("validation fraction must be in (0,1), got {0}")]
    InvalidFraction(f64),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("empty utterance")]
    EmptyUtterance,

    #[error("invalid tagger configuration: {0}")]
    InvalidConfig(String),

    #[error("no '{class}' tokens in training data")]
    MissingClass { class: &'static str },

    #[error("non-finite training loss at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },

    #[error("utterance count mismatch: {utterances} utterances vs {tags} tagged")]
    UtteranceCountMismatch { utterances: usize, tags: usize },

    #[error("token count mismatch at utterance {index}")]
    TokenCountMismatch { index: usize },

    #[error("unexpected sentiment class '{label}' in analysis records")]
    UnexpectedSentiment { label: String },

    #[error("design matrix has {rows} rows but {cols} columns; need rows >= columns")]
    TooFewObservations { rows: usize, cols: usize },

    #[error("design matrix is rank-deficient at column '{column}'")]
    RankDeficient { column: String },

    #[error("zero residual degrees of freedom")]
    NoResidualDf,

    #[error("saturated full model (zero residual sum of squares)")]
    SaturatedModel,

    #[error("models are not nested: {0}")]
    NotNested(String),

    #[error("quantile probability must be in (0,1), got {0}")]
    QuantileDomain(f64),

    #[error("distribution parameter out of domain: {0}")]
    DistributionDomain(String),

    #[error("continued fraction did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("zero residual variance")]
    ZeroResidualVariance,

    #[error("need at least {needed} observations, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("model serialization: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
