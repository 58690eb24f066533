//! Measurement pipeline for romanized English–Tamil code-switched comments:
//! corpus and tag I/O, script-based filtering, token-level language
//! identification, per-utterance code-switching metrics, and the OLS/ANOVA
//! machinery that relates those metrics to sentiment labels.
//!
//! The crate is organized as a pipeline:
//!
//! 1. [`corpus`] — TSV dataset and CoNLL tag file parsing, train/validation
//!    splitting.
//! 2. [`script`] — Tamil-script detection and the romanized analysis-subset
//!    filter.
//! 3. [`lid`] — rule-plus-classifier token language tagging (en/ta/na).
//! 4. [`metrics`] — language proportions, switch counts, group summaries.
//! 5. [`stats`] — design matrices, OLS fits, coefficient inference, ANOVA,
//!    and Q-Q diagnostics.
//!
//! All pipeline stages are deterministic: identical inputs (and seeds,
//! where applicable) produce byte-identical outputs.

pub mod corpus;
pub mod error;
pub mod lid;
pub mod metrics;
pub mod script;
pub mod stats;

pub use error::{Error, Result};
