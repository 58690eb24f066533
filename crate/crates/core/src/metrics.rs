//! Per-utterance code-switching measurements (language proportions, switch
//! counts) and per-sentiment group summaries.
//!
//! Proportions keep `na` tokens in the denominator, so en + ta + na = 1 per
//! utterance. Switch counting has two modes because "a boundary where both
//! labels differ and neither is na" and "differing labels after ignoring na
//! tokens" are different definitions; [`SwitchMode::StrictBoundary`] is the
//! default and [`SwitchMode::CollapseNa`] is the other reading.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::{LangTag, SentimentLabel, TaggedCorpus, TaggedUtterance};
use crate::error::{Error, Result};

/// How to count language switches within a tag sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchMode {
    /// Count boundaries whose two adjacent tags differ and are both non-na.
    #[default]
    StrictBoundary,
    /// Delete na tokens first, then count adjacent differing tags.
    CollapseNa,
}

/// How group-level proportion means are aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Unweighted mean of per-utterance proportions.
    #[default]
    Macro,
    /// Token-pooled: total tagged tokens over total tokens.
    Micro,
}

/// Measurements for a single utterance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtteranceMetrics {
    pub id: Option<usize>,
    pub sentiment: Option<SentimentLabel>,
    pub token_count: usize,
    pub en_prop: f64,
    pub ta_prop: f64,
    pub na_prop: f64,
    pub switch_count: usize,
}

/// Five-number summary plus mean, for boxplot rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Per-sentiment aggregate over utterance metrics.
///
/// `mean_*_prop` are macro aggregates (unweighted over utterances);
/// `micro_*_prop` pool tokens across the group. `sd_en_prop` uses the n−1
/// denominator and is reported as 0 with `sd_degenerate` set when n = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub sentiment: SentimentLabel,
    pub n: usize,
    pub mean_en_prop: f64,
    pub mean_ta_prop: f64,
    pub mean_na_prop: f64,
    pub mean_switches: f64,
    pub sd_en_prop: f64,
    pub sd_degenerate: bool,
    pub micro_en_prop: f64,
    pub micro_ta_prop: f64,
    pub micro_na_prop: f64,
    pub en_prop_box: BoxStats,
    pub switch_count_box: BoxStats,
}

impl GroupSummary {
    /// The (en, ta, na) proportion means under the chosen aggregation.
    pub fn prop_means(&self, aggregation: Aggregation) -> [f64; 3] {
        match aggregation {
            Aggregation::Macro => [self.mean_en_prop, self.mean_ta_prop, self.mean_na_prop],
            Aggregation::Micro => [self.micro_en_prop, self.micro_ta_prop, self.micro_na_prop],
        }
    }
}

/// Tag proportions (en, ta, na) with all tokens — including na — in the
/// denominator.
pub fn language_proportions(tagged: &TaggedUtterance) -> Result<(f64, f64, f64)> {
    if tagged.is_empty() {
        return Err(Error::EmptyUtterance);
    }
    let n = tagged.len() as f64;
    let mut counts = [0usize; 3];
    for tag in &tagged.tags {
        counts[tag.index()] += 1;
    }
    Ok((
        counts[LangTag::En.index()] as f64 / n,
        counts[LangTag::Ta.index()] as f64 / n,
        counts[LangTag::Na.index()] as f64 / n,
    ))
}

/// Number of language switches in the tag sequence under the given mode.
/// Empty and single-token utterances have zero switches.
pub fn switch_count(tagged: &TaggedUtterance, mode: SwitchMode) -> usize {
    match mode {
        SwitchMode::StrictBoundary => tagged
            .tags
            .windows(2)
            .filter(|pair| {
                pair[0] != pair[1] && pair[0] != LangTag::Na && pair[1] != LangTag::Na
            })
            .count(),
        SwitchMode::CollapseNa => {
            let collapsed: Vec<LangTag> = tagged
                .tags
                .iter()
                .copied()
                .filter(|&tag| tag != LangTag::Na)
                .collect();
            collapsed.windows(2).filter(|pair| pair[0] != pair[1]).count()
        }
    }
}

/// Full per-utterance measurement. Sentiment and id are carried through
/// from the utterance when attached.
pub fn utterance_metrics(tagged: &TaggedUtterance, mode: SwitchMode) -> Result<UtteranceMetrics> {
    let (en_prop, ta_prop, na_prop) = language_proportions(tagged)?;
    Ok(UtteranceMetrics {
        id: tagged.id,
        sentiment: tagged.sentiment,
        token_count: tagged.len(),
        en_prop,
        ta_prop,
        na_prop,
        switch_count: switch_count(tagged, mode),
    })
}

/// Linear-interpolation quantile (R type 7) of already-sorted values:
/// index h = (n−1)p, interpolated between floor(h) and floor(h)+1.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

fn box_stats(values: &[f64]) -> BoxStats {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite metric values"));
    BoxStats {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        mean: values.iter().sum::<f64>() / values.len() as f64,
    }
}

/// Aggregates metrics per sentiment class, in the fixed order Positive,
/// Mixed_feelings, Negative. Classes with no utterances are omitted, as
/// are rows whose sentiment is missing or outside those three classes.
pub fn group_summary(metrics: &[UtteranceMetrics]) -> Vec<GroupSummary> {
    const ORDER: [SentimentLabel; 3] = [
        SentimentLabel::Positive,
        SentimentLabel::MixedFeelings,
        SentimentLabel::Negative,
    ];
    ORDER
        .iter()
        .filter_map(|&sentiment| {
            let rows: Vec<&UtteranceMetrics> = metrics
                .iter()
                .filter(|m| m.sentiment == Some(sentiment))
                .collect();
            if rows.is_empty() {
                return None;
            }
            Some(summarize(sentiment, &rows))
        })
        .collect()
}

fn summarize(sentiment: SentimentLabel, rows: &[&UtteranceMetrics]) -> GroupSummary {
    let n = rows.len();
    let nf = n as f64;
    let en_props: Vec<f64> = rows.iter().map(|m| m.en_prop).collect();
    let switch_counts: Vec<f64> = rows.iter().map(|m| m.switch_count as f64).collect();

    let mean_en_prop = en_props.iter().sum::<f64>() / nf;
    let mean_ta_prop = rows.iter().map(|m| m.ta_prop).sum::<f64>() / nf;
    let mean_na_prop = rows.iter().map(|m| m.na_prop).sum::<f64>() / nf;
    let mean_switches = switch_counts.iter().sum::<f64>() / nf;

    let sd_degenerate = n == 1;
    let sd_en_prop = if sd_degenerate {
        0.0
    } else {
        let ss: f64 = en_props.iter().map(|v| (v - mean_en_prop).powi(2)).sum();
        (ss / (nf - 1.0)).sqrt()
    };

    let total_tokens: f64 = rows.iter().map(|m| m.token_count as f64).sum();
    let pooled = |prop: fn(&UtteranceMetrics) -> f64| {
        rows.iter()
            .map(|m| prop(m) * m.token_count as f64)
            .sum::<f64>()
            / total_tokens
    };

    GroupSummary {
        sentiment,
        n,
        mean_en_prop,
        mean_ta_prop,
        mean_na_prop,
        mean_switches,
        sd_en_prop,
        sd_degenerate,
        micro_en_prop: pooled(|m| m.en_prop),
        micro_ta_prop: pooled(|m| m.ta_prop),
        micro_na_prop: pooled(|m| m.na_prop),
        en_prop_box: box_stats(&en_props),
        switch_count_box: box_stats(&switch_counts),
    }
}

/// Writes the per-utterance metrics table: one row per utterance with both
/// switch-count modes side by side. Missing ids/sentiments print as blanks.
pub fn write_metrics_tsv<W: Write>(writer: &mut W, corpus: &TaggedCorpus) -> Result<()> {
    writeln!(
        writer,
        "id\tsentiment\ttoken_count\ten_prop\tta_prop\tna_prop\tswitches_strict\tswitches_collapse"
    )?;
    for tagged in &corpus.utterances {
        let (en, ta, na) = language_proportions(tagged)?;
        writeln!(
            writer,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            tagged.id.map(|i| i.to_string()).unwrap_or_default(),
            tagged.sentiment.map(|s| s.as_str().to_string()).unwrap_or_default(),
            tagged.len(),
            en,
            ta,
            na,
            switch_count(tagged, SwitchMode::StrictBoundary),
            switch_count(tagged, SwitchMode::CollapseNa),
        )?;
    }
    Ok(())
}
