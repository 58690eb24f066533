//! The analyze subcommand: the full report bundle from a tagged corpus.

use std::fs;
use std::path::Path;

use serde::Serialize;

use codemix::corpus::SentimentLabel;
use codemix::lid::import_tags;
use codemix::metrics::{
    group_summary, utterance_metrics, write_metrics_tsv, Aggregation, BoxStats, GroupSummary,
    SwitchMode, UtteranceMetrics,
};
use codemix::script::{partition_by_script, select_analysis_subset};
use codemix::stats::{anova_compare, fit_model, qq_data, write_qq_tsv, ModelSpec};
use codemix::{Error, Result};

use crate::ops::{read_conll, read_dataset, write_json};

/// table1.json: group summaries plus the requested presentation knobs.
#[derive(Serialize)]
struct GroupTable<'a> {
    aggregation: Aggregation,
    switch_mode: SwitchMode,
    groups: &'a [GroupSummary],
}

#[derive(Serialize)]
struct BoxplotGroup<'a> {
    sentiment: SentimentLabel,
    stats: &'a BoxStats,
}

#[derive(Serialize)]
struct Boxplot<'a> {
    groups: Vec<BoxplotGroup<'a>>,
}

/// One row of the rounded presentation table: one-decimal percents and
/// two-decimal switch means.
#[derive(Serialize)]
struct RoundedRow {
    sentiment: SentimentLabel,
    n: usize,
    en_pct: f64,
    ta_pct: f64,
    na_pct: f64,
    switches: f64,
}

fn round_to(value: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (value * scale).round() / scale
}

/// The four standard model fits, in fixed emission order.
fn model_specs() -> [(&'static str, ModelSpec); 4] {
    [
        ("model_1a", ModelSpec::model_1a()),
        ("model_1b", ModelSpec::model_1b()),
        ("model_2a", ModelSpec::model_2a()),
        ("model_2b", ModelSpec::model_2b()),
    ]
}

pub fn cmd_analyze(
    input: &Path,
    tags: &Path,
    mode: SwitchMode,
    aggregation: Aggregation,
    out: &Path,
    paper_rounding: bool,
) -> Result<()> {
    let utterances = read_dataset(input)?;
    let (romanized, _) = partition_by_script(&utterances);
    let subset = select_analysis_subset(&romanized);
    let external = read_conll(tags)?;
    let tagged = import_tags(&subset, &external)?;
    if tagged.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let metrics: Vec<UtteranceMetrics> = tagged
        .utterances
        .iter()
        .map(|u| utterance_metrics(u, mode))
        .collect::<Result<_>>()?;

    fs::create_dir_all(out)?;

    let mut buf = Vec::new();
    write_metrics_tsv(&mut buf, &tagged)?;
    fs::write(out.join("metrics.tsv"), buf)?;

    let summaries = group_summary(&metrics);
    write_json(
        &out.join("table1.json"),
        &GroupTable { aggregation, switch_mode: mode, groups: &summaries },
    )?;
    write_json(
        &out.join("boxplot_en.json"),
        &Boxplot {
            groups: summaries
                .iter()
                .map(|s| BoxplotGroup { sentiment: s.sentiment, stats: &s.en_prop_box })
                .collect(),
        },
    )?;
    write_json(
        &out.join("boxplot_switches.json"),
        &Boxplot {
            groups: summaries
                .iter()
                .map(|s| BoxplotGroup { sentiment: s.sentiment, stats: &s.switch_count_box })
                .collect(),
        },
    )?;

    let mut fits = Vec::new();
    for (name, spec) in &model_specs() {
        let fit = fit_model(&metrics, spec)?;
        fs::write(out.join(format!("{name}.json")), fit.to_json() + "\n")?;
        let qq = qq_data(&fit)?;
        let mut buf = Vec::new();
        write_qq_tsv(&mut buf, &qq)?;
        fs::write(out.join(format!("qq_{name}.tsv")), buf)?;
        fits.push(fit);
    }

    let proportions_anova = anova_compare(&fits[0], &fits[1])?;
    fs::write(out.join("anova_1.json"), proportions_anova.to_json() + "\n")?;
    let switches_anova = anova_compare(&fits[2], &fits[3])?;
    fs::write(out.join("anova_2.json"), switches_anova.to_json() + "\n")?;

    if paper_rounding {
        let rows: Vec<RoundedRow> = summaries
            .iter()
            .map(|s| {
                let [en, ta, na] = s.prop_means(aggregation);
                RoundedRow {
                    sentiment: s.sentiment,
                    n: s.n,
                    en_pct: round_to(100.0 * en, 1),
                    ta_pct: round_to(100.0 * ta, 1),
                    na_pct: round_to(100.0 * na, 1),
                    switches: round_to(s.mean_switches, 2),
                }
            })
            .collect();
        write_json(&out.join("table1_rounded.json"), &rows)?;
    }

    Ok(())
}
