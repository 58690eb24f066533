//! Token-level language identification.
//!
//! Tagging is layered: a deterministic rule assigns `na` to tokens without
//! letters (numerals, punctuation, symbols), and a character-n-gram
//! multinomial logistic classifier handles everything else. Externally
//! produced tags can be merged in via [`import_tags`] instead of running
//! the classifier.

mod eval;
mod features;
mod train;

pub use eval::{evaluate, EvalReport};
pub use features::extract_features;
pub use train::{train, train_with_history, TrainingData};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{LangTag, TaggedCorpus, TaggedUtterance, Utterance};
use crate::error::{Error, Result};

/// A whitespace-delimited token and its position within the utterance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

/// Classifier hyperparameters.
///
/// Full-batch training is deterministic given the corpus and this config;
/// `seed` is carried for reproducibility bookkeeping and stochastic
/// variants but is not consumed by the deterministic optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LidConfig {
    pub ngram_min: usize,
    pub ngram_max: usize,
    pub min_ngram_count: usize,
    pub l2_penalty: f64,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for LidConfig {
    fn default() -> Self {
        LidConfig {
            ngram_min: 1,
            ngram_max: 4,
            min_ngram_count: 2,
            l2_penalty: 1e-4,
            learning_rate: 0.5,
            epochs: 200,
            seed: 13,
        }
    }
}

impl LidConfig {
    // The negated float comparisons deliberately reject NaN values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if self.ngram_min < 1 {
            return Err(Error::InvalidConfig("ngram_min must be >= 1".into()));
        }
        if self.ngram_max < self.ngram_min {
            return Err(Error::InvalidConfig("ngram_max must be >= ngram_min".into()));
        }
        if self.min_ngram_count < 1 {
            return Err(Error::InvalidConfig("min_ngram_count must be >= 1".into()));
        }
        if !(self.l2_penalty >= 0.0) {
            return Err(Error::InvalidConfig("l2_penalty must be non-negative".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidConfig("learning_rate must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be positive".into()));
        }
        Ok(())
    }
}

/// Trained classifier: a dense feature index plus a weight matrix of shape
/// `|classes| x (|features| + 1)`, bias in the last column, stored
/// row-major in class order en, ta, na.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LidModel {
    pub classes: [LangTag; 3],
    pub feature_index: BTreeMap<String, usize>,
    pub weights: Vec<f64>,
    pub config: LidConfig,
}

impl LidModel {
    pub fn n_features(&self) -> usize {
        self.feature_index.len()
    }

    /// Linear class scores (bias included) for a token surface. Argmax
    /// order equals softmax argmax order, so raw scores suffice for
    /// prediction; n-grams absent from the feature index contribute
    /// nothing.
    pub fn score(&self, surface: &str) -> [f64; 3] {
        let token = Token {
            surface: surface.to_string(),
            position: 0,
        };
        let feats = extract_features(&token, &self.config);
        let n_cols = self.n_features() + 1;
        let mut scores = [0.0f64; 3];
        for (class, score) in scores.iter_mut().enumerate() {
            let row = &self.weights[class * n_cols..(class + 1) * n_cols];
            let mut s = row[n_cols - 1]; // bias
            for (gram, count) in &feats {
                if let Some(&idx) = self.feature_index.get(gram) {
                    s += row[idx] * count;
                }
            }
            *score = s;
        }
        scores
    }

    /// Softmax class probabilities for a token surface.
    pub fn probabilities(&self, surface: &str) -> [f64; 3] {
        let scores = self.score(surface);
        softmax3(scores)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(json: &str) -> Result<LidModel> {
        let model: LidModel =
            serde_json::from_str(json).map_err(|e| Error::ModelFormat(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        if self.classes != LangTag::ALL {
            return Err(Error::ModelFormat(
                "classes must be [en, ta, na] in order".into(),
            ));
        }
        let f = self.feature_index.len();
        if self.weights.len() != 3 * (f + 1) {
            return Err(Error::ModelFormat(format!(
                "weight matrix must be 3x{} for {} features, got {} entries",
                f + 1,
                f,
                self.weights.len()
            )));
        }
        if self.weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::ModelFormat("non-finite weight".into()));
        }
        let mut seen = vec![false; f];
        for &idx in self.feature_index.values() {
            if idx >= f || seen[idx] {
                return Err(Error::ModelFormat("feature ids must be dense 0..F-1".into()));
            }
            seen[idx] = true;
        }
        self.config.validate()
    }
}

pub(crate) fn softmax3(scores: [f64; 3]) -> [f64; 3] {
    let max = scores[0].max(scores[1]).max(scores[2]);
    let exps = [
        (scores[0] - max).exp(),
        (scores[1] - max).exp(),
        (scores[2] - max).exp(),
    ];
    let sum = exps[0] + exps[1] + exps[2];
    [exps[0] / sum, exps[1] / sum, exps[2] / sum]
}

/// Splits text on runs of Unicode whitespace. No case or punctuation
/// normalization; positions are 0-based and consecutive.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .enumerate()
        .map(|(position, surface)| Token {
            surface: surface.to_string(),
            position,
        })
        .collect()
}

/// Deterministic rule layer: `na` when the surface has no letters (only
/// digits, punctuation, symbols); otherwise defer to the classifier.
pub fn rule_tag(token: &Token) -> Option<LangTag> {
    if token.surface.chars().any(char::is_alphabetic) {
        None
    } else {
        Some(LangTag::Na)
    }
}

/// Tokenizes and tags one utterance: rule layer first, classifier argmax
/// for the rest, ties broken by the fixed class order en < ta < na.
pub fn predict(model: &LidModel, text: &str) -> TaggedUtterance {
    let tokens = tokenize(text);
    let tags = tokens
        .iter()
        .map(|token| {
            rule_tag(token).unwrap_or_else(|| {
                let scores = model.score(&token.surface);
                argmax3(scores)
            })
        })
        .collect();
    TaggedUtterance {
        tokens: tokens.into_iter().map(|t| t.surface).collect(),
        tags,
        sentiment: None,
        id: None,
    }
}

fn argmax3(scores: [f64; 3]) -> LangTag {
    let mut best = 0;
    for i in 1..3 {
        if scores[i] > scores[best] {
            best = i;
        }
    }
    LangTag::ALL[best]
}

/// Attaches sentiment labels and source ids from `utterances` onto an
/// externally tagged corpus, preserving order. Token counts per utterance
/// must match `tokenize(text)`.
pub fn import_tags(utterances: &[Utterance], tags: &TaggedCorpus) -> Result<TaggedCorpus> {
    if utterances.len() != tags.len() {
        return Err(Error::UtteranceCountMismatch {
            utterances: utterances.len(),
            tags: tags.len(),
        });
    }
    let merged = utterances
        .iter()
        .zip(&tags.utterances)
        .enumerate()
        .map(|(index, (utterance, tagged))| {
            let n_tokens = tokenize(&utterance.text).len();
            if n_tokens != tagged.len() {
                return Err(Error::TokenCountMismatch { index });
            }
            Ok(TaggedUtterance {
                tokens: tagged.tokens.clone(),
                tags: tagged.tags.clone(),
                sentiment: Some(utterance.sentiment),
                id: Some(utterance.id),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TaggedCorpus::new(merged))
}
