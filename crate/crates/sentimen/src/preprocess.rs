//! Four-stage text preprocessing: punctuation removal, case folding,
//! whitespace tokenization, and stopword filtering.
//!
//! The stages are pure functions composed in exactly that order by
//! [`Preprocessor::run`]. Input is NFC-normalized first so tokens are stable
//! across input sources. Each stage is idempotent on its own output domain.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::corpus::LabeledDocument;

/// Errors from stopword handling.
#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("stopword filtering enabled with an empty stopword list")]
    EmptyStopwordList,
    #[error("invalid stopword entry {0:?}: entries must be single tokens")]
    InvalidStopword(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// A set of lowercase stopword tokens. Serializes as a sorted word list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct StopwordList {
    words: HashSet<String>,
}

impl From<StopwordList> for Vec<String> {
    fn from(list: StopwordList) -> Self {
        list.sorted_words()
    }
}

impl TryFrom<Vec<String>> for StopwordList {
    type Error = String;

    fn try_from(words: Vec<String>) -> Result<Self, String> {
        StopwordList::from_words(words).map_err(|e| e.to_string())
    }
}

impl StopwordList {
    /// Build a list from tokens. Entries are lowercased; entries with
    /// internal whitespace are rejected.
    pub fn from_words<I, S>(words: I) -> Result<Self, PreprocessError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = HashSet::new();
        for word in words {
            let word = word.as_ref().trim();
            if word.is_empty() {
                continue;
            }
            if word.split_whitespace().count() != 1 {
                return Err(PreprocessError::InvalidStopword(word.to_string()));
            }
            set.insert(word.to_lowercase());
        }
        Ok(StopwordList { words: set })
    }

    /// Load a stopword file: UTF-8, one token per line, `#` comment lines and
    /// blank lines ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PreprocessError> {
        let content = fs::read_to_string(path)?;
        Self::from_lines(&content)
    }

    fn from_lines(content: &str) -> Result<Self, PreprocessError> {
        Self::from_words(
            content
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    /// The Indonesian stopword list bundled with the crate.
    pub fn bundled_indonesian() -> StopwordList {
        Self::from_lines(include_str!("../data/stopwords_id.txt"))
            .expect("bundled stopword list is valid")
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Entries in sorted order (for serialization and display).
    pub fn sorted_words(&self) -> Vec<String> {
        let mut words: Vec<String> = self.words.iter().cloned().collect();
        words.sort();
        words
    }
}

/// An ordered list of clean lowercase tokens for one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDocument {
    pub id: String,
    pub tokens: Vec<String>,
}

/// NFC-normalize raw input. Runs before stage 1 so that visually identical
/// inputs from different sources produce identical tokens.
pub fn nfc_normalize(text: &str) -> String {
    text.nfc().collect()
}

/// Stage 1: replace every character that is not alphanumeric or whitespace
/// (punctuation, symbols, `@`, `#`, emoji, control characters) with a single
/// space. Letters, digits and existing whitespace pass through, so mentions
/// and hashtags keep their word part.
pub fn remove_punctuation(text: &str) -> String {
    text.chars()
        .map(|c| {
            if c.is_alphanumeric() || c.is_whitespace() {
                c
            } else {
                ' '
            }
        })
        .collect()
}

/// Stage 2: Unicode lowercasing; no other change.
pub fn case_fold(text: &str) -> String {
    text.to_lowercase()
}

/// Stage 3: split on runs of whitespace. Never yields empty tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Stage 4: drop stopword members, preserving the order of the rest.
/// Filtering with an empty list is an error.
pub fn filter_stopwords(
    tokens: Vec<String>,
    stopwords: &StopwordList,
) -> Result<Vec<String>, PreprocessError> {
    if stopwords.is_empty() {
        return Err(PreprocessError::EmptyStopwordList);
    }
    Ok(tokens
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect())
}

/// The composed four-stage pipeline. The stopword list is validated as
/// non-empty at construction, so the per-document run is total.
#[derive(Debug, Clone)]
pub struct Preprocessor {
    stopwords: StopwordList,
}

impl Preprocessor {
    pub fn new(stopwords: StopwordList) -> Result<Self, PreprocessError> {
        if stopwords.is_empty() {
            return Err(PreprocessError::EmptyStopwordList);
        }
        Ok(Preprocessor { stopwords })
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stopwords
    }

    /// remove_punctuation, then case_fold, then tokenize, then
    /// filter_stopwords (after NFC normalization of the raw input).
    pub fn run_text(&self, text: &str) -> Vec<String> {
        let tokens = tokenize(&case_fold(&remove_punctuation(&nfc_normalize(text))));
        tokens
            .into_iter()
            .filter(|t| !self.stopwords.contains(t))
            .collect()
    }

    pub fn run(&self, doc: &LabeledDocument) -> TokenizedDocument {
        TokenizedDocument {
            id: doc.id.clone(),
            tokens: self.run_text(&doc.text),
        }
    }
}
