//! Regression model specifications and dummy-coded design matrices.
//!
//! Sentiment enters as treatment (dummy) coding with Positive as the
//! reference level, so the intercept is the Positive-group baseline and
//! the Mixed_feelings/Negative coefficients are offsets from it.

use serde::{Deserialize, Serialize};

use crate::corpus::SentimentLabel;
use crate::error::{Error, Result};
use crate::metrics::UtteranceMetrics;

/// Which per-utterance measurement the model predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    EnProp,
    SwitchCount,
}

/// A right-hand-side term. `SentimentByTokenCount` is the elementwise
/// product of the sentiment dummies with the token count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Sentiment,
    TokenCount,
    SentimentByTokenCount,
}

/// An OLS model: outcome, ordered predictor terms, and an always-present
/// intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub outcome: Outcome,
    pub terms: Vec<Term>,
}

impl ModelSpec {
    /// English proportion explained by sentiment alone.
    pub fn model_1a() -> ModelSpec {
        ModelSpec {
            outcome: Outcome::EnProp,
            terms: vec![Term::Sentiment],
        }
    }

    /// English proportion: sentiment, token count, and their interaction.
    pub fn model_1b() -> ModelSpec {
        ModelSpec {
            outcome: Outcome::EnProp,
            terms: vec![Term::Sentiment, Term::TokenCount, Term::SentimentByTokenCount],
        }
    }

    /// Switch count explained by sentiment alone.
    pub fn model_2a() -> ModelSpec {
        ModelSpec {
            outcome: Outcome::SwitchCount,
            terms: vec![Term::Sentiment],
        }
    }

    /// Switch count: sentiment, token count, and their interaction.
    pub fn model_2b() -> ModelSpec {
        ModelSpec {
            outcome: Outcome::SwitchCount,
            terms: vec![Term::Sentiment, Term::TokenCount, Term::SentimentByTokenCount],
        }
    }

    /// An interaction term requires both of its parent main effects.
    pub fn validate(&self) -> Result<()> {
        if self.terms.contains(&Term::SentimentByTokenCount)
            && !(self.terms.contains(&Term::Sentiment) && self.terms.contains(&Term::TokenCount))
        {
            return Err(Error::InvalidConfig(
                "interaction term requires sentiment and token_count main effects".into(),
            ));
        }
        if self.terms.is_empty() {
            return Err(Error::InvalidConfig("model needs at least one term".into()));
        }
        Ok(())
    }
}

/// Expanded numeric design: `values` is n×p row-major, first column all
/// ones, remaining columns in the fixed order intercept, Mixed_feelings,
/// Negative, token_count, Mixed_feelings:token_count,
/// Negative:token_count (whichever the model's terms select).
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    pub values: Vec<f64>,
    pub column_names: Vec<String>,
    pub n: usize,
    pub p: usize,
    pub spec: Option<ModelSpec>,
}

/// Expands metrics records into a dummy-coded design and outcome vector.
/// Every record must carry one of the three analysis sentiments.
pub fn build_design_matrix(
    records: &[UtteranceMetrics],
    spec: &ModelSpec,
) -> Result<(DesignMatrix, Vec<f64>)> {
    spec.validate()?;
    if records.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let mut column_names = vec!["intercept".to_string()];
    if spec.terms.contains(&Term::Sentiment) {
        column_names.push("Mixed_feelings".into());
        column_names.push("Negative".into());
    }
    if spec.terms.contains(&Term::TokenCount) {
        column_names.push("token_count".into());
    }
    if spec.terms.contains(&Term::SentimentByTokenCount) {
        column_names.push("Mixed_feelings:token_count".into());
        column_names.push("Negative:token_count".into());
    }
    let p = column_names.len();

    let mut values = Vec::with_capacity(records.len() * p);
    let mut y = Vec::with_capacity(records.len());
    for record in records {
        let (mixed, negative) = match record.sentiment {
            Some(SentimentLabel::Positive) => (0.0, 0.0),
            Some(SentimentLabel::MixedFeelings) => (1.0, 0.0),
            Some(SentimentLabel::Negative) => (0.0, 1.0),
            other => {
                return Err(Error::UnexpectedSentiment {
                    label: other.map_or("<missing>".into(), |s| s.as_str().to_string()),
                })
            }
        };
        let token_count = record.token_count as f64;

        values.push(1.0);
        if spec.terms.contains(&Term::Sentiment) {
            values.push(mixed);
            values.push(negative);
        }
        if spec.terms.contains(&Term::TokenCount) {
            values.push(token_count);
        }
        if spec.terms.contains(&Term::SentimentByTokenCount) {
            values.push(mixed * token_count);
            values.push(negative * token_count);
        }
        y.push(match spec.outcome {
            Outcome::EnProp => record.en_prop,
            Outcome::SwitchCount => record.switch_count as f64,
        });
    }

    Ok((
        DesignMatrix {
            values,
            column_names,
            n: records.len(),
            p,
            spec: Some(spec.clone()),
        },
        y,
    ))
}
