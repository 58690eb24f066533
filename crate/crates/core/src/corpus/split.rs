//! Deterministic utterance-level train/validation splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::TaggedCorpus;

/// Splits a corpus into (train, validation) parts at the utterance level.
///
/// Indices are shuffled with a ChaCha stream seeded from `seed`, then cut:
/// the first `round(fraction * n)` shuffled utterances form the validation
/// part. Identical `(corpus, fraction, seed)` inputs always produce the
/// identical partition.
pub fn split_train_validation(
    corpus: &TaggedCorpus,
    validation_fraction: f64,
    seed: u64,
) -> Result<(TaggedCorpus, TaggedCorpus)> {
    if !(validation_fraction > 0.0 && validation_fraction < 1.0) {
        return Err(Error::InvalidFraction(validation_fraction));
    }
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let n = corpus.len();
    let n_validation = (validation_fraction * n as f64).round() as usize;

    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);

    let validation = indices[..n_validation]
        .iter()
        .map(|&i| corpus.utterances[i].clone())
        .collect();
    let train = indices[n_validation..]
        .iter()
        .map(|&i| corpus.utterances[i].clone())
        .collect();

    Ok((TaggedCorpus::new(train), TaggedCorpus::new(validation)))
}
