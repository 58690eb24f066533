//! Script-based corpus partitioning and analysis-subset selection.
//!
//! Utterances containing at least one code point in the Tamil Unicode block
//! (U+0B80-U+0BFF) are classified as Tamil-script; everything else counts
//! as romanized. The analysis subset keeps only the romanized utterances
//! labeled Positive, Negative, or Mixed_feelings.

use serde::{Deserialize, Serialize};

use crate::corpus::{SentimentLabel, Utterance};

/// Corpus-level filtering counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub total: usize,
    pub tamil_script: usize,
    pub romanized: usize,
    /// unknown_state utterances among the romanized partition.
    pub excluded_unknown_state: usize,
    /// not-Tamil utterances among the romanized partition.
    pub excluded_not_tamil: usize,
    pub analysis_subset: usize,
}

/// True iff at least one code point lies in U+0B80-U+0BFF inclusive.
pub fn contains_tamil_script(text: &str) -> bool {
    text.chars().any(|c| ('\u{0B80}'..='\u{0BFF}').contains(&c))
}

/// Splits utterances into (romanized, tamil_script), preserving order.
pub fn partition_by_script(utterances: &[Utterance]) -> (Vec<Utterance>, Vec<Utterance>) {
    utterances
        .iter()
        .cloned()
        .partition(|u| !contains_tamil_script(&u.text))
}

/// Retains only Positive, Negative, and Mixed_feelings utterances,
/// preserving order. Input is expected to be romanized already, but that
/// is not enforced so the operations compose freely.
pub fn select_analysis_subset(utterances: &[Utterance]) -> Vec<Utterance> {
    utterances
        .iter()
        .filter(|u| u.sentiment.is_analysis_class())
        .cloned()
        .collect()
}

/// Computes all filter counts in one pass.
pub fn filter_report(utterances: &[Utterance]) -> FilterReport {
    let mut report = FilterReport {
        total: utterances.len(),
        tamil_script: 0,
        romanized: 0,
        excluded_unknown_state: 0,
        excluded_not_tamil: 0,
        analysis_subset: 0,
    };
    for u in utterances {
        if contains_tamil_script(&u.text) {
            report.tamil_script += 1;
        } else {
            report.romanized += 1;
            match u.sentiment {
                SentimentLabel::UnknownState => report.excluded_unknown_state += 1,
                SentimentLabel::NotTamil => report.excluded_not_tamil += 1,
                _ => report.analysis_subset += 1,
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn utterance(id: usize, text: &str, sentiment: SentimentLabel) -> Utterance {
        Utterance {
            id,
            text: text.to_string(),
            sentiment,
        }
    }

    #[test]
    fn pure_latin_is_not_tamil_script() {
        assert!(!contains_tamil_script("super movie"));
    }

    #[test]
    fn tamil_block_membership() {
        assert!(contains_tamil_script("அ good")); // U+0B85
        assert!(contains_tamil_script("\u{0B80}"));
        assert!(contains_tamil_script("\u{0BFF}"));
        // Neighbors just outside the block.
        assert!(!contains_tamil_script("\u{0B7F}"));
        assert!(!contains_tamil_script("\u{0C00}"));
    }

    #[test]
    fn empty_string_is_not_tamil_script() {
        assert!(!contains_tamil_script(""));
    }

    #[test]
    fn ascii_padding_does_not_change_classification() {
        for text in ["அ", "padam"] {
            let base = contains_tamil_script(text);
            assert_eq!(contains_tamil_script(&format!("abc {text}")), base);
            assert_eq!(contains_tamil_script(&format!("{text} xyz!")), base);
        }
    }

    #[test]
    fn partition_mixed_fixture() {
        let input = vec![
            utterance(0, "super", SentimentLabel::Positive),
            utterance(1, "நல்ல படம்", SentimentLabel::Positive),
            utterance(2, "mokka", SentimentLabel::Negative),
            utterance(3, "சூப்பர்", SentimentLabel::Positive),
            utterance(4, "ok ok", SentimentLabel::MixedFeelings),
        ];
        let (romanized, tamil) = partition_by_script(&input);
        assert_eq!(romanized.len(), 3);
        assert_eq!(tamil.len(), 2);
        // Completeness + order preservation within each side.
        assert_eq!(
            romanized.iter().map(|u| u.id).collect::<Vec<_>>(),
            vec![0, 2, 4]
        );
        assert_eq!(tamil.iter().map(|u| u.id).collect::<Vec<_>>(), vec![1, 3]);
        // Each side classified consistently with contains_tamil_script.
        assert!(romanized.iter().all(|u| !contains_tamil_script(&u.text)));
        assert!(tamil.iter().all(|u| contains_tamil_script(&u.text)));
    }

    #[test]
    fn partition_empty_input() {
        let (a, b) = partition_by_script(&[]);
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn subset_keeps_three_classes() {
        let input = vec![
            utterance(0, "a", SentimentLabel::Positive),
            utterance(1, "b", SentimentLabel::Negative),
            utterance(2, "c", SentimentLabel::MixedFeelings),
            utterance(3, "d", SentimentLabel::UnknownState),
            utterance(4, "e", SentimentLabel::NotTamil),
        ];
        let subset = select_analysis_subset(&input);
        assert_eq!(subset.iter().map(|u| u.id).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn subset_of_only_unknown_state_is_empty() {
        let input = vec![utterance(0, "x", SentimentLabel::UnknownState)];
        assert!(select_analysis_subset(&input).is_empty());
    }

    #[test]
    fn subset_is_idempotent() {
        let input = vec![
            utterance(0, "a", SentimentLabel::Positive),
            utterance(1, "b", SentimentLabel::NotTamil),
        ];
        let once = select_analysis_subset(&input);
        let twice = select_analysis_subset(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn report_on_empty_corpus_is_all_zeros() {
        let report = filter_report(&[]);
        assert_eq!(
            report,
            FilterReport {
                total: 0,
                tamil_script: 0,
                romanized: 0,
                excluded_unknown_state: 0,
                excluded_not_tamil: 0,
                analysis_subset: 0,
            }
        );
    }

    #[test]
    fn report_matches_per_utterance_classification() {
        let input = vec![
            utterance(0, "good", SentimentLabel::Positive),
            utterance(1, "அட", SentimentLabel::Negative),
            utterance(2, "hmm", SentimentLabel::UnknownState),
            utterance(3, "english only", SentimentLabel::NotTamil),
            utterance(4, "semma", SentimentLabel::Positive),
        ];
        let report = filter_report(&input);
        // Brute-force recount.
        let tamil = input
            .iter()
            .filter(|u| contains_tamil_script(&u.text))
            .count();
        let romanized: Vec<_> = input
            .iter()
            .filter(|u| !contains_tamil_script(&u.text))
            .collect();
        let unknown = romanized
            .iter()
            .filter(|u| u.sentiment == SentimentLabel::UnknownState)
            .count();
        let not_tamil = romanized
            .iter()
            .filter(|u| u.sentiment == SentimentLabel::NotTamil)
            .count();
        assert_eq!(report.total, input.len());
        assert_eq!(report.tamil_script, tamil);
        assert_eq!(report.romanized, romanized.len());
        assert_eq!(report.excluded_unknown_state, unknown);
        assert_eq!(report.excluded_not_tamil, not_tamil);
        // Invariants.
        assert_eq!(report.tamil_script + report.romanized, report.total);
        assert_eq!(
            report.analysis_subset,
            report.romanized - report.excluded_unknown_state - report.excluded_not_tamil
        );
    }

    #[test]
    fn report_serializes_with_snake_case_keys() {
        let report = filter_report(&[utterance(0, "hi", SentimentLabel::Positive)]);
        let json = serde_json::to_value(report).unwrap();
        for key in [
            "total",
            "tamil_script",
            "romanized",
            "excluded_unknown_state",
            "excluded_not_tamil",
            "analysis_subset",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
    }
}
