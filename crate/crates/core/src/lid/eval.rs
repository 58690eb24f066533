//! Token-level evaluation: confusion matrix, per-class precision/recall/F1,
//! macro-F1, and accuracy.

use serde::{Deserialize, Serialize};

use crate::corpus::{LangTag, TaggedCorpus};
use crate::error::{Error, Result};

/// Evaluation summary. The confusion matrix is indexed `[gold][predicted]`
/// in class order en, ta, na; per-class vectors follow the same order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classes: [LangTag; 3],
    pub confusion: [[usize; 3]; 3],
    pub per_class_precision: [f64; 3],
    pub per_class_recall: [f64; 3],
    pub per_class_f1: [f64; 3],
    pub macro_f1: f64,
    pub accuracy: f64,
}

impl EvalReport {
    /// Derives all metrics from a `[gold][predicted]` confusion matrix.
    /// Precision and recall are defined as 0 when their denominator is
    /// zero, F1 as 0 when precision + recall is zero, and accuracy as 0
    /// for an empty matrix.
    pub fn from_confusion(confusion: [[usize; 3]; 3]) -> EvalReport {
        let mut precision = [0.0f64; 3];
        let mut recall = [0.0f64; 3];
        let mut f1 = [0.0f64; 3];

        for c in 0..3 {
            let tp = confusion[c][c] as f64;
            let predicted: usize = (0..3).map(|g| confusion[g][c]).sum();
            let gold: usize = confusion[c].iter().sum();
            precision[c] = if predicted > 0 { tp / predicted as f64 } else { 0.0 };
            recall[c] = if gold > 0 { tp / gold as f64 } else { 0.0 };
            f1[c] = if precision[c] + recall[c] > 0.0 {
                2.0 * precision[c] * recall[c] / (precision[c] + recall[c])
            } else {
                0.0
            };
        }

        let total: usize = confusion.iter().flatten().sum();
        let diagonal: usize = (0..3).map(|c| confusion[c][c]).sum();
        let accuracy = if total > 0 {
            diagonal as f64 / total as f64
        } else {
            0.0
        };

        EvalReport {
            classes: LangTag::ALL,
            confusion,
            per_class_precision: precision,
            per_class_recall: recall,
            per_class_f1: f1,
            macro_f1: f1.iter().sum::<f64>() / 3.0,
            accuracy,
        }
    }
}

/// Compares predictions against gold tags token by token. Both corpora
/// must have the same utterance count and per-utterance token counts.
pub fn evaluate(predictions: &TaggedCorpus, gold: &TaggedCorpus) -> Result<EvalReport> {
    if predictions.len() != gold.len() {
        return Err(Error::UtteranceCountMismatch {
            utterances: gold.len(),
            tags: predictions.len(),
        });
    }

    let mut confusion = [[0usize; 3]; 3];
    for (index, (pred, gold_u)) in predictions.utterances.iter().zip(&gold.utterances).enumerate() {
        if pred.len() != gold_u.len() {
            return Err(Error::TokenCountMismatch { index });
        }
        for (p, g) in pred.tags.iter().zip(&gold_u.tags) {
            confusion[g.index()][p.index()] += 1;
        }
    }
    Ok(EvalReport::from_confusion(confusion))
}
