//! Corpus file formats and dataset splitting.
//!
//! Two formats are supported: the sentiment dataset TSV (`text<TAB>label`,
//! one utterance per line) and token-tag CoNLL (`token<TAB>tag` lines with
//! blank lines between utterances).

mod conll;
mod split;
mod tsv;

pub use conll::{parse_conll, write_conll, write_conll_to_string};
pub use split::split_train_validation;
pub use tsv::{parse_dataset, write_dataset};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Utterance-level sentiment category of the source corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SentimentLabel {
    Positive,
    Negative,
    #[serde(rename = "Mixed_feelings")]
    MixedFeelings,
    #[serde(rename = "unknown_state")]
    UnknownState,
    #[serde(rename = "not-Tamil")]
    NotTamil,
}

impl SentimentLabel {
    pub fn parse(s: &str) -> Option<SentimentLabel> {
        match s {
            "Positive" => Some(SentimentLabel::Positive),
            "Negative" => Some(SentimentLabel::Negative),
            "Mixed_feelings" => Some(SentimentLabel::MixedFeelings),
            "unknown_state" => Some(SentimentLabel::UnknownState),
            "not-Tamil" => Some(SentimentLabel::NotTamil),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SentimentLabel::Positive => "Positive",
            SentimentLabel::Negative => "Negative",
            SentimentLabel::MixedFeelings => "Mixed_feelings",
            SentimentLabel::UnknownState => "unknown_state",
            SentimentLabel::NotTamil => "not-Tamil",
        }
    }

    /// True for the three classes retained by the analysis subset.
    pub fn is_analysis_class(&self) -> bool {
        matches!(
            self,
            SentimentLabel::Positive | SentimentLabel::Negative | SentimentLabel::MixedFeelings
        )
    }
}

impl std::fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One corpus record: raw text plus its sentiment label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    /// Stable index within the corpus, assigned in file order.
    pub id: usize,
    pub text: String,
    pub sentiment: SentimentLabel,
}

/// Per-token language tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LangTag {
    #[serde(rename = "en")]
    En,
    #[serde(rename = "ta")]
    Ta,
    #[serde(rename = "na")]
    Na,
}

impl LangTag {
    /// Fixed class order used everywhere: en, ta, na.
    pub const ALL: [LangTag; 3] = [LangTag::En, LangTag::Ta, LangTag::Na];

    pub fn parse(s: &str) -> Option<LangTag> {
        match s {
            "en" => Some(LangTag::En),
            "ta" => Some(LangTag::Ta),
            "na" => Some(LangTag::Na),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LangTag::En => "en",
            LangTag::Ta => "ta",
            LangTag::Na => "na",
        }
    }

    /// Index into the fixed class order.
    pub fn index(&self) -> usize {
        match self {
            LangTag::En => 0,
            LangTag::Ta => 1,
            LangTag::Na => 2,
        }
    }
}

impl std::fmt::Display for LangTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tokenized utterance with one language tag per token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedUtterance {
    pub tokens: Vec<String>,
    pub tags: Vec<LangTag>,
    pub sentiment: Option<SentimentLabel>,
    pub id: Option<usize>,
}

impl TaggedUtterance {
    /// Builds a tagged utterance, enforcing the type invariants:
    /// equal token/tag lengths and whitespace-free, non-empty tokens.
    pub fn new(tokens: Vec<String>, tags: Vec<LangTag>) -> Result<Self> {
        if tokens.len() != tags.len() {
            return Err(Error::TokenCountMismatch { index: 0 });
        }
        for token in &tokens {
            if token.is_empty() {
                return Err(Error::EmptyToken { line: 0 });
            }
            if token.chars().any(char::is_whitespace) {
                return Err(Error::TokenWhitespace {
                    token: token.clone(),
                    line: 0,
                });
            }
        }
        Ok(TaggedUtterance {
            tokens,
            tags,
            sentiment: None,
            id: None,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Ordered collection of tagged utterances.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedCorpus {
    pub utterances: Vec<TaggedUtterance>,
}

impl TaggedCorpus {
    pub fn new(utterances: Vec<TaggedUtterance>) -> Self {
        TaggedCorpus { utterances }
    }

    pub fn len(&self) -> usize {
        self.utterances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utterances.is_empty()
    }

    /// Total token count across all utterances.
    pub fn token_count(&self) -> usize {
        self.utterances.iter().map(TaggedUtterance::len).sum()
    }
}
