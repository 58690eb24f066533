//! Sentiment dataset TSV reader/writer.
//!
//! Format: UTF-8, one `text<TAB>label` record per line, LF or CRLF endings.
//! An optional header line `text<TAB>category` is skipped.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::{SentimentLabel, Utterance};

/// Parses the dataset TSV. Ids are assigned 0..n-1 in file order.
pub fn parse_dataset<R: BufRead>(reader: R) -> Result<Vec<Utterance>> {
    let mut utterances = Vec::new();
    let mut next_id = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        // Header line, if present, is always the first line.
        if line_no == 1 && line == "text\tcategory" {
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::FieldCount {
                line: line_no,
                fields: fields.len(),
            });
        }
        let (text, label) = (fields[0], fields[1]);
        if text.trim().is_empty() {
            return Err(Error::EmptyText { line: line_no });
        }
        let sentiment = SentimentLabel::parse(label).ok_or_else(|| Error::UnknownSentiment {
            label: label.to_string(),
            line: line_no,
        })?;

        utterances.push(Utterance {
            id: next_id,
            text: text.to_string(),
            sentiment,
        });
        next_id += 1;
    }

    Ok(utterances)
}

/// Writes utterances back out in dataset TSV format, with a header line.
pub fn write_dataset<W: Write>(utterances: &[Utterance], mut sink: W) -> Result<()> {
    writeln!(sink, "text\tcategory")?;
    for u in utterances {
        writeln!(sink, "{}\t{}", u.text, u.sentiment)?;
    }
    Ok(())
}
