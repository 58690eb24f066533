//! The filter, train, and tag subcommands, plus shared file helpers.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter};
use std::path::Path;

use serde::Serialize;

use codemix::corpus::{
    parse_conll, parse_dataset, split_train_validation, write_conll, write_dataset, TaggedCorpus,
    Utterance,
};
use codemix::lid::{evaluate, import_tags, predict, train, LidConfig, LidModel};
use codemix::script::{filter_report, partition_by_script, select_analysis_subset};
use codemix::{Error, Result};

/// Opens a file for reading, attaching the path to any I/O error.
fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn read_dataset(path: &Path) -> Result<Vec<Utterance>> {
    parse_dataset(open(path)?)
}

pub fn read_conll(path: &Path) -> Result<TaggedCorpus> {
    parse_conll(open(path)?)
}

pub fn read_model(path: &Path) -> Result<LidModel> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    LidModel::from_json(&text)
}

/// Pretty-prints a serializable value to `path` with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| Error::ModelFormat(e.to_string()))?;
    fs::write(path, body + "\n")?;
    Ok(())
}

/// Partitions the dataset by script and writes the counts plus both parts.
pub fn cmd_filter(input: &Path, out: &Path) -> Result<()> {
    let utterances = read_dataset(input)?;
    let report = filter_report(&utterances);
    let (romanized, tamil_script) = partition_by_script(&utterances);

    fs::create_dir_all(out)?;
    write_json(&out.join("filter_report.json"), &report)?;
    let mut sink = BufWriter::new(File::create(out.join("romanized.tsv"))?);
    write_dataset(&romanized, &mut sink)?;
    let mut sink = BufWriter::new(File::create(out.join("tamil_script.tsv"))?);
    write_dataset(&tamil_script, &mut sink)?;
    Ok(())
}

/// Trains on a shuffled split of the gold corpus and evaluates the rest.
pub fn cmd_train(gold: &Path, split: f64, seed: u64, out: &Path) -> Result<()> {
    let corpus = read_conll(gold)?;
    let (train_part, validation) = split_train_validation(&corpus, split, seed)?;
    if validation.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let config = LidConfig::default();
    let model = train(&train_part, &config)?;
    let predictions = TaggedCorpus::new(
        validation
            .utterances
            .iter()
            .map(|u| predict(&model, &u.tokens.join(" ")))
            .collect(),
    );
    let report = evaluate(&predictions, &validation)?;

    fs::create_dir_all(out)?;
    fs::write(out.join("model.json"), model.to_json() + "\n")?;
    write_json(&out.join("eval_report.json"), &report)?;
    Ok(())
}

/// Produces the tagged analysis subset from exactly one tag source.
pub fn cmd_tag(
    input: &Path,
    model_path: Option<&Path>,
    tags_path: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let utterances = read_dataset(input)?;
    let (romanized, _) = partition_by_script(&utterances);

    let tagged = match (model_path, tags_path) {
        (Some(path), None) => {
            let model = read_model(path)?;
            let subset = select_analysis_subset(&romanized);
            TaggedCorpus::new(
                subset
                    .iter()
                    .map(|u| {
                        let mut tagged = predict(&model, &u.text);
                        tagged.sentiment = Some(u.sentiment);
                        tagged.id = Some(u.id);
                        tagged
                    })
                    .collect(),
            )
        }
        (None, Some(path)) => {
            let external = read_conll(path)?;
            let imported = import_tags(&romanized, &external)?;
            TaggedCorpus::new(
                imported
                    .utterances
                    .into_iter()
                    .filter(|u| u.sentiment.map(|s| s.is_analysis_class()).unwrap_or(false))
                    .collect(),
            )
        }
        // The argument parser requires exactly one source.
        _ => unreachable!("exactly one tag source"),
    };

    fs::create_dir_all(out)?;
    let mut sink = BufWriter::new(File::create(out.join("tagged.conll"))?);
    write_conll(&tagged, &mut sink)?;
    Ok(())
}
