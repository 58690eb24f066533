//! Character n-gram feature extraction.

use std::collections::BTreeMap;

use super::{LidConfig, Token};

/// Extracts character n-gram counts from the lowercased surface, wrapped
/// with one `^` start marker and one `$` end marker, for every n in
/// `[ngram_min, ngram_max]`. Literal `^`/`$` characters inside a token
/// alias with the markers; the collision is harmless for classification.
pub fn extract_features(token: &Token, config: &LidConfig) -> BTreeMap<String, f64> {
    let mut padded: Vec<char> = Vec::with_capacity(token.surface.len() + 2);
    padded.push('^');
    padded.extend(token.surface.to_lowercase().chars());
    padded.push('$');

    let mut counts = BTreeMap::new();
    for n in config.ngram_min..=config.ngram_max {
        if n > padded.len() {
            break;
        }
        for window in padded.windows(n) {
            let gram: String = window.iter().collect();
            *counts.entry(gram).or_insert(0.0) += 1.0;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn token(surface: &str) -> Token {
        Token {
            surface: surface.to_string(),
            position: 0,
        }
    }

    fn config(min: usize, max: usize) -> LidConfig {
        LidConfig {
            ngram_min: min,
            ngram_max: max,
            ..LidConfig::default()
        }
    }

    #[test]
    fn bigrams_of_ab() {
        let feats = extract_features(&token("ab"), &config(2, 2));
        let expected: BTreeMap<String, f64> = [("^a", 1.0), ("ab", 1.0), ("b$", 1.0)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(feats, expected);
    }

    #[test]
    fn unigrams_of_aa_count_repeats_and_boundaries() {
        let feats = extract_features(&token("aa"), &config(1, 1));
        let expected: BTreeMap<String, f64> = [("^", 1.0), ("a", 2.0), ("$", 1.0)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(feats, expected);
    }

    #[test]
    fn range_covers_all_orders() {
        let feats = extract_features(&token("ab"), &config(1, 4));
        // ^ab$: 4 unigrams distinct... (^, a, b, $), 3 bigrams, 2 trigrams, 1 4-gram.
        assert_eq!(feats.len(), 4 + 3 + 2 + 1);
        assert_eq!(feats["^ab$"], 1.0);
    }

    #[test]
    fn n_larger_than_padded_surface_yields_nothing() {
        let feats = extract_features(&token("a"), &config(4, 4));
        assert!(feats.is_empty());
    }

    #[test]
    fn lowercases_before_extraction() {
        let upper = extract_features(&token("The"), &config(1, 3));
        let lower = extract_features(&token("the"), &config(1, 3));
        assert_eq!(upper, lower);
    }

    #[test]
    fn multibyte_chars_are_single_units() {
        let feats = extract_features(&token("அஆ"), &config(2, 2));
        assert_eq!(feats.len(), 3); // ^அ, அஆ, ஆ$
    }
}
