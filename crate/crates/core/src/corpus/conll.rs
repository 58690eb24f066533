//! CoNLL-style token/tag reader and writer.
//!
//! One `token<TAB>tag` pair per line; a blank line ends an utterance. On
//! write, utterances are separated by exactly one blank line and the file
//! ends with a blank line, so `parse(write(c)) == c`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::{LangTag, TaggedCorpus, TaggedUtterance};

/// Parses CoNLL input. Utterances with zero tokens (consecutive blank
/// lines) are skipped silently.
pub fn parse_conll<R: BufRead>(reader: R) -> Result<TaggedCorpus> {
    let mut utterances = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut tags: Vec<LangTag> = Vec::new();

    let mut flush = |tokens: &mut Vec<String>, tags: &mut Vec<LangTag>| {
        if !tokens.is_empty() {
            utterances.push(TaggedUtterance {
                tokens: std::mem::take(tokens),
                tags: std::mem::take(tags),
                sentiment: None,
                id: None,
            });
        }
    };

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.is_empty() {
            flush(&mut tokens, &mut tags);
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::FieldCount {
                line: line_no,
                fields: fields.len(),
            });
        }
        let (token, tag) = (fields[0], fields[1]);
        if token.is_empty() {
            return Err(Error::EmptyToken { line: line_no });
        }
        if token.chars().any(char::is_whitespace) {
            return Err(Error::TokenWhitespace {
                token: token.to_string(),
                line: line_no,
            });
        }
        let tag = LangTag::parse(tag).ok_or_else(|| Error::UnknownTag {
            tag: tag.to_string(),
            line: line_no,
        })?;
        tokens.push(token.to_string());
        tags.push(tag);
    }
    flush(&mut tokens, &mut tags);

    Ok(TaggedCorpus::new(utterances))
}

/// Writes a corpus in CoNLL format.
pub fn write_conll<W: Write>(corpus: &TaggedCorpus, mut sink: W) -> Result<()> {
    for utterance in &corpus.utterances {
        for (token, tag) in utterance.tokens.iter().zip(&utterance.tags) {
            writeln!(sink, "{token}\t{tag}")?;
        }
        writeln!(sink)?;
    }
    Ok(())
}

/// Convenience wrapper returning the serialized corpus as a string.
pub fn write_conll_to_string(corpus: &TaggedCorpus) -> String {
    let mut buf = Vec::new();
    write_conll(corpus, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CoNLL output is UTF-8")
}
