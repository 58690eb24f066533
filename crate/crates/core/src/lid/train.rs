//! Classifier training: multinomial logistic regression fit by full-batch
//! gradient descent on L2-penalized cross-entropy.
//!
//! With the default config the objective decreases monotonically; step
//! sizes above roughly `2 / lipschitz` of the smoothed objective (about
//! 0.5 for the bundled defaults on desk-scale corpora) can diverge, which
//! the non-finite-loss guard turns into an error.

use std::collections::BTreeMap;

use crate::corpus::{LangTag, TaggedCorpus};
use crate::error::{Error, Result};

use super::{extract_features, rule_tag, softmax3, LidConfig, LidModel, Token};

/// Sparse training problem assembled from a tagged corpus: one example per
/// token not resolved by the rule layer, features filtered by the minimum
/// n-gram count. Exposes the objective and its gradient so training can be
/// checked against finite differences.
pub struct TrainingData {
    feature_index: BTreeMap<String, usize>,
    /// (sorted sparse feature vector, class index) per example.
    examples: Vec<(Vec<(usize, f64)>, usize)>,
    config: LidConfig,
}

impl TrainingData {
    pub fn from_corpus(corpus: &TaggedCorpus, config: &LidConfig) -> Result<TrainingData> {
        config.validate()?;

        // Tokens handled by the rule layer are excluded from training.
        let mut kept: Vec<(Token, LangTag)> = Vec::new();
        for utterance in &corpus.utterances {
            for (position, (surface, tag)) in
                utterance.tokens.iter().zip(&utterance.tags).enumerate()
            {
                let token = Token {
                    surface: surface.clone(),
                    position,
                };
                if rule_tag(&token).is_none() {
                    kept.push((token, *tag));
                }
            }
        }

        // The two language classes must both be attested; na has the rule
        // fallback and letter-bearing na examples are optional.
        for (class, name) in [(LangTag::En, "en"), (LangTag::Ta, "ta")] {
            if !kept.iter().any(|(_, tag)| *tag == class) {
                return Err(Error::MissingClass { class: name });
            }
        }

        let mut global_counts: BTreeMap<String, f64> = BTreeMap::new();
        let per_token: Vec<(BTreeMap<String, f64>, usize)> = kept
            .iter()
            .map(|(token, tag)| {
                let feats = extract_features(token, config);
                for (gram, count) in &feats {
                    *global_counts.entry(gram.clone()).or_insert(0.0) += count;
                }
                (feats, tag.index())
            })
            .collect();

        // Dense ids assigned in sorted n-gram order for determinism.
        let feature_index: BTreeMap<String, usize> = global_counts
            .iter()
            .filter(|(_, &count)| count >= config.min_ngram_count as f64)
            .map(|(gram, _)| gram.clone())
            .zip(0..)
            .collect();

        let examples = per_token
            .into_iter()
            .map(|(feats, class)| {
                let sparse: Vec<(usize, f64)> = feats
                    .into_iter()
                    .filter_map(|(gram, count)| {
                        feature_index.get(&gram).map(|&idx| (idx, count))
                    })
                    .collect();
                (sparse, class)
            })
            .collect();

        Ok(TrainingData {
            feature_index,
            examples,
            config: config.clone(),
        })
    }

    pub fn n_features(&self) -> usize {
        self.feature_index.len()
    }

    pub fn n_examples(&self) -> usize {
        self.examples.len()
    }

    /// Total weight count: 3 classes x (features + bias).
    pub fn n_weights(&self) -> usize {
        3 * (self.n_features() + 1)
    }

    fn scores(&self, weights: &[f64], sparse: &[(usize, f64)]) -> [f64; 3] {
        let n_cols = self.n_features() + 1;
        let mut scores = [0.0f64; 3];
        for (class, score) in scores.iter_mut().enumerate() {
            let row = &weights[class * n_cols..(class + 1) * n_cols];
            let mut s = row[n_cols - 1];
            for &(idx, count) in sparse {
                s += row[idx] * count;
            }
            *score = s;
        }
        scores
    }

    /// Mean cross-entropy over examples plus `l2/2 * ||W||^2` over the
    /// non-bias weights.
    pub fn loss(&self, weights: &[f64]) -> f64 {
        assert_eq!(weights.len(), self.n_weights());
        let n = self.examples.len() as f64;
        let mut total = 0.0;
        for (sparse, class) in &self.examples {
            let scores = self.scores(weights, sparse);
            let max = scores[0].max(scores[1]).max(scores[2]);
            let log_sum = ((scores[0] - max).exp()
                + (scores[1] - max).exp()
                + (scores[2] - max).exp())
            .ln()
                + max;
            total += log_sum - scores[*class];
        }
        let mut penalty = 0.0;
        let n_cols = self.n_features() + 1;
        for class in 0..3 {
            for j in 0..n_cols - 1 {
                let w = weights[class * n_cols + j];
                penalty += w * w;
            }
        }
        total / n + 0.5 * self.config.l2_penalty * penalty
    }

    pub fn gradient(&self, weights: &[f64]) -> Vec<f64> {
        self.loss_and_gradient(weights).1
    }

    /// One pass computing both the objective and its gradient.
    pub fn loss_and_gradient(&self, weights: &[f64]) -> (f64, Vec<f64>) {
        assert_eq!(weights.len(), self.n_weights());
        let n_cols = self.n_features() + 1;
        let n = self.examples.len() as f64;
        let mut grad = vec![0.0f64; weights.len()];
        let mut total = 0.0;

        for (sparse, class) in &self.examples {
            let scores = self.scores(weights, sparse);
            let max = scores[0].max(scores[1]).max(scores[2]);
            let log_sum = ((scores[0] - max).exp()
                + (scores[1] - max).exp()
                + (scores[2] - max).exp())
            .ln()
                + max;
            total += log_sum - scores[*class];

            let probs = softmax3(scores);
            for c in 0..3 {
                let delta = probs[c] - if c == *class { 1.0 } else { 0.0 };
                let row = &mut grad[c * n_cols..(c + 1) * n_cols];
                for &(idx, count) in sparse {
                    row[idx] += delta * count;
                }
                row[n_cols - 1] += delta;
            }
        }

        let mut penalty = 0.0;
        for class in 0..3 {
            for j in 0..n_cols - 1 {
                let w = weights[class * n_cols + j];
                grad[class * n_cols + j] = grad[class * n_cols + j] / n + self.config.l2_penalty * w;
                penalty += w * w;
            }
            let bias = class * n_cols + n_cols - 1;
            grad[bias] /= n;
        }

        (total / n + 0.5 * self.config.l2_penalty * penalty, grad)
    }
}

/// Trains a model from a tagged corpus. Deterministic: weights start at
/// zero and examples are visited in corpus order every epoch.
pub fn train(corpus: &TaggedCorpus, config: &LidConfig) -> Result<LidModel> {
    train_with_history(corpus, config).map(|(model, _)| model)
}

/// Like [`train`], also returning the objective value at initialization
/// and after each epoch (`epochs + 1` entries).
pub fn train_with_history(
    corpus: &TaggedCorpus,
    config: &LidConfig,
) -> Result<(LidModel, Vec<f64>)> {
    let data = TrainingData::from_corpus(corpus, config)?;
    let mut weights = vec![0.0f64; data.n_weights()];
    let mut history = Vec::with_capacity(config.epochs + 1);

    for epoch in 0..config.epochs {
        let (loss, grad) = data.loss_and_gradient(&weights);
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { epoch });
        }
        history.push(loss);
        for (w, g) in weights.iter_mut().zip(&grad) {
            *w -= config.learning_rate * g;
        }
    }
    let final_loss = data.loss(&weights);
    if !final_loss.is_finite() {
        return Err(Error::NonFiniteLoss {
            epoch: config.epochs,
        });
    }
    history.push(final_loss);

    let model = LidModel {
        classes: LangTag::ALL,
        feature_index: data.feature_index,
        weights,
        config: config.clone(),
    };
    Ok((model, history))
}
