//! Labeled-document corpora, flat-file ingestion, and deterministic
//! train/test splitting.
//!
//! A [`Corpus`] is an ordered collection of [`LabeledDocument`]s loaded from
//! CSV or JSONL. Document order is the file order and every operation that
//! consumes a corpus is deterministic given its inputs, so experiments
//! reproduce exactly across runs and machines.
//!
//! Splits are driven by a seeded ChaCha8 stream (`rand_chacha` 0.3); the
//! generator is pinned so that a `(corpus, fraction, seed)` triple always
//! yields the same partition.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Binary sentiment polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    /// Stable lowercase tag, also used in file formats.
    pub fn tag(self) -> &'static str {
        match self {
            Label::Negative => "negative",
            Label::Positive => "positive",
        }
    }

    /// Dense index for two-element tables: Negative = 0, Positive = 1.
    pub fn index(self) -> usize {
        match self {
            Label::Negative => 0,
            Label::Positive => 1,
        }
    }

    /// Parse a label case-insensitively. Only the two binary tags are accepted.
    pub fn parse(value: &str) -> Result<Self, CorpusError> {
        match value.trim().to_lowercase().as_str() {
            "positive" => Ok(Label::Positive),
            "negative" => Ok(Label::Negative),
            _ => Err(CorpusError::UnknownLabel(value.to_string())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One labeled text unit (a tweet-sized document).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDocument {
    pub id: String,
    pub text: String,
    pub label: Label,
}

/// Ordered, immutable collection of labeled documents.
///
/// Ids are unique and texts are non-empty; both are enforced at ingestion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    documents: Vec<LabeledDocument>,
}

/// Supported flat-file formats for [`load_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl CorpusFormat {
    pub fn parse(value: &str) -> Result<Self, CorpusError> {
        match value.trim().to_lowercase().as_str() {
            "csv" => Ok(CorpusFormat::Csv),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            _ => Err(CorpusError::UnknownFormat(value.to_string())),
        }
    }
}

/// Errors from corpus ingestion and splitting.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus file not found: {0}")]
    MissingFile(String),
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("unknown label {0:?} (expected \"positive\" or \"negative\")")]
    UnknownLabel(String),
    #[error("duplicate document id {0:?}")]
    DuplicateId(String),
    #[error("unknown corpus format {0:?} (expected \"csv\" or \"jsonl\")")]
    UnknownFormat(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("corpus has {0} documents; splitting needs at least 2")]
    CorpusTooSmall(usize),
    #[error("train fraction {0} out of range (0, 1)")]
    FractionOutOfRange(f64),
    #[error("sweep produced no fractions")]
    EmptySweep,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Corpus {
    /// Build a corpus from documents, enforcing id uniqueness and non-empty
    /// texts. Order is preserved.
    pub fn new(documents: Vec<LabeledDocument>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for (i, doc) in documents.iter().enumerate() {
            if doc.text.trim().is_empty() {
                return Err(CorpusError::MalformedRow {
                    line: i as u64 + 1,
                    reason: format!("empty text for id {:?}", doc.id),
                });
            }
            if !seen.insert(doc.id.clone()) {
                return Err(CorpusError::DuplicateId(doc.id.clone()));
            }
        }
        if documents.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        Ok(Corpus { documents })
    }

    pub fn documents(&self) -> &[LabeledDocument] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledDocument> {
        self.documents.iter()
    }

    /// Count of documents per label as `(positive, negative)`.
    pub fn label_balance(&self) -> (usize, usize) {
        let pos = self
            .documents
            .iter()
            .filter(|d| d.label == Label::Positive)
            .count();
        (pos, self.documents.len() - pos)
    }

    /// The 200-document demo corpus bundled with the crate
    /// (synthetic Indonesian-like tweets, CSV schema `id,text,label`).
    pub fn bundled_demo() -> Corpus {
        parse_csv(include_str!("../data/demo_tweets.csv").as_bytes())
            .expect("bundled demo corpus is valid")
    }

    /// Method form of [`split`].
    pub fn split(&self, train_fraction: f64, seed: u64) -> Result<DataSplit, CorpusError> {
        split(self, train_fraction, seed)
    }

    /// Method form of [`split_stratified`].
    pub fn split_stratified(
        &self,
        train_fraction: f64,
        seed: u64,
    ) -> Result<DataSplit, CorpusError> {
        split_stratified(self, train_fraction, seed)
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a LabeledDocument;
    type IntoIter = std::slice::Iter<'a, LabeledDocument>;

    fn into_iter(self) -> Self::IntoIter {
        self.documents.iter()
    }
}

/// A disjoint train/test partition of a source corpus.
///
/// Both partitions keep the source corpus order, so downstream consumers
/// (vocabulary construction, nearest-neighbor tie-breaks) see documents in a
/// stable order no matter which permutation produced the split.
#[derive(Debug, Clone)]
pub struct DataSplit {
    pub train: Corpus,
    pub test: Corpus,
    pub train_fraction: f64,
    pub seed: u64,
}

/// Load a corpus from a flat file.
///
/// CSV files need an `id,text,label` header and RFC-4180 quoting; JSONL files
/// carry one `{"id", "text", "label"}` object per line. Labels parse
/// case-insensitively as `positive`/`negative`.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(CorpusError::MissingFile(path.display().to_string()));
    }
    let file = File::open(path)?;
    match format {
        CorpusFormat::Csv => parse_csv(file),
        CorpusFormat::Jsonl => parse_jsonl(file),
    }
}

fn parse_csv(reader: impl std::io::Read) -> Result<Corpus, CorpusError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);

    let headers = csv_reader
        .headers()
        .map_err(|e| CorpusError::MalformedRow {
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    if headers.iter().all(|h| h.trim().is_empty()) {
        return Err(CorpusError::EmptyCorpus);
    }
    let field = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (id_col, text_col, label_col) = match (field("id"), field("text"), field("label")) {
        (Some(i), Some(t), Some(l)) => (i, t, l),
        _ => {
            return Err(CorpusError::MalformedRow {
                line: 1,
                reason: format!("header must contain id,text,label (got {:?})", headers),
            })
        }
    };

    let mut documents = Vec::new();
    for record in csv_reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line())
                .unwrap_or(documents.len() as u64 + 2);
            CorpusError::MalformedRow {
                line,
                reason: e.to_string(),
            }
        })?;
        let line = record
            .position()
            .map(|p| p.line())
            .unwrap_or(documents.len() as u64 + 2);
        let get = |col: usize| {
            record.get(col).ok_or(CorpusError::MalformedRow {
                line,
                reason: format!("missing column {col}"),
            })
        };
        let id = get(id_col)?.to_string();
        let text = get(text_col)?.to_string();
        let label = Label::parse(get(label_col)?)?;
        if text.trim().is_empty() {
            return Err(CorpusError::MalformedRow {
                line,
                reason: format!("empty text for id {id:?}"),
            });
        }
        documents.push(LabeledDocument { id, text, label });
    }
    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Corpus::new(documents)
}

#[derive(Deserialize)]
struct JsonlRow {
    id: String,
    text: String,
    label: String,
}

fn parse_jsonl(reader: impl std::io::Read) -> Result<Corpus, CorpusError> {
    let mut documents = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonlRow = serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRow {
            line: line_no,
            reason: e.to_string(),
        })?;
        if row.text.trim().is_empty() {
            return Err(CorpusError::MalformedRow {
                line: line_no,
                reason: format!("empty text for id {:?}", row.id),
            });
        }
        documents.push(LabeledDocument {
            id: row.id,
            text: row.text,
            label: Label::parse(&row.label)?,
        });
    }
    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Corpus::new(documents)
}

/// Round-half-up of `fraction * n`, clamped so both partitions stay
/// non-empty.
fn train_size(n: usize, fraction: f64) -> usize {
    let k = (fraction * n as f64 + 0.5).floor() as usize;
    k.clamp(1, n - 1)
}

fn deterministic_shuffle(indices: &mut [usize], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Fisher-Yates over the index slice.
    for i in (1..indices.len()).rev() {
        let j = rng.gen_range(0..=i);
        indices.swap(i, j);
    }
}

fn split_from_train_indices(
    corpus: &Corpus,
    train_indices: HashSet<usize>,
    train_fraction: f64,
    seed: u64,
) -> DataSplit {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, doc) in corpus.iter().enumerate() {
        if train_indices.contains(&i) {
            train.push(doc.clone());
        } else {
            test.push(doc.clone());
        }
    }
    DataSplit {
        train: Corpus { documents: train },
        test: Corpus { documents: test },
        train_fraction,
        seed,
    }
}

/// Partition a corpus into train/test sets.
///
/// A seeded pseudo-random permutation of document indices assigns the first
/// `round(fraction * n)` documents to the train set; both partitions are then
/// restored to source order. Pure in `(corpus contents, fraction, seed)`.
pub fn split(corpus: &Corpus, train_fraction: f64, seed: u64) -> Result<DataSplit, CorpusError> {
    check_split_preconditions(corpus, train_fraction)?;
    let n = corpus.len();
    let mut indices: Vec<usize> = (0..n).collect();
    deterministic_shuffle(&mut indices, seed);
    let k = train_size(n, train_fraction);
    let train_indices: HashSet<usize> = indices[..k].iter().copied().collect();
    Ok(split_from_train_indices(
        corpus,
        train_indices,
        train_fraction,
        seed,
    ))
}

/// Label-stratified variant of [`split`]: each class is permuted and sampled
/// separately at the same fraction, so the train set preserves the corpus
/// label balance. Off by default; enabled via the `stratified` config flag.
pub fn split_stratified(
    corpus: &Corpus,
    train_fraction: f64,
    seed: u64,
) -> Result<DataSplit, CorpusError> {
    check_split_preconditions(corpus, train_fraction)?;
    let mut train_indices = HashSet::new();
    // Classes are processed in a fixed tag order from one seeded stream.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for label in [Label::Negative, Label::Positive] {
        let mut class_indices: Vec<usize> = corpus
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label == label)
            .map(|(i, _)| i)
            .collect();
        for i in (1..class_indices.len()).rev() {
            let j = rng.gen_range(0..=i);
            class_indices.swap(i, j);
        }
        if class_indices.is_empty() {
            continue;
        }
        let k = train_size(class_indices.len().max(2), train_fraction).min(class_indices.len());
        train_indices.extend(class_indices[..k].iter().copied());
    }
    // Keep both sides non-empty even on degenerate class layouts.
    let n = corpus.len();
    if train_indices.is_empty() {
        train_indices.insert(0);
    }
    if train_indices.len() == n {
        let last = *train_indices.iter().max().unwrap();
        train_indices.remove(&last);
    }
    Ok(split_from_train_indices(
        corpus,
        train_indices,
        train_fraction,
        seed,
    ))
}

fn check_split_preconditions(corpus: &Corpus, train_fraction: f64) -> Result<(), CorpusError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(CorpusError::FractionOutOfRange(train_fraction));
    }
    if corpus.len() < 2 {
        return Err(CorpusError::CorpusTooSmall(corpus.len()));
    }
    Ok(())
}

/// Tolerance for the inclusive endpoint comparison in [`sweep_fractions`].
pub const FRACTION_EPSILON: f64 = 1e-9;

/// The arithmetic progression `start, start+step, ..., end` (inclusive,
/// compared with tolerance [`FRACTION_EPSILON`]). Every fraction must lie in
/// (0, 1); a non-positive step is rejected as out of range.
pub fn sweep_fractions(start: f64, end: f64, step: f64) -> Result<Vec<f64>, CorpusError> {
    if step <= 0.0 {
        return Err(CorpusError::FractionOutOfRange(step));
    }
    let mut fractions = Vec::new();
    let mut i = 0u32;
    loop {
        let f = start + f64::from(i) * step;
        if f > end + FRACTION_EPSILON {
            break;
        }
        if !(f > 0.0 && f < 1.0) {
            return Err(CorpusError::FractionOutOfRange(f));
        }
        fractions.push(f);
        i += 1;
    }
    if fractions.is_empty() {
        return Err(CorpusError::EmptySweep);
    }
    Ok(fractions)
}

/// One split per sweep fraction. Split `i` is seeded `seed ^ i`, so each
/// experiment reshuffles independently while the whole sweep stays a pure
/// function of `(corpus, bounds, seed)`.
pub fn sweep_splits(
    corpus: &Corpus,
    start: f64,
    end: f64,
    step: f64,
    seed: u64,
) -> Result<Vec<DataSplit>, CorpusError> {
    sweep_splits_with(corpus, start, end, step, seed, false)
}

/// [`sweep_splits`] with an optional stratified splitting strategy.
pub fn sweep_splits_with(
    corpus: &Corpus,
    start: f64,
    end: f64,
    step: f64,
    seed: u64,
    stratified: bool,
) -> Result<Vec<DataSplit>, CorpusError> {
    let fractions = sweep_fractions(start, end, step)?;
    fractions
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let split_seed = seed ^ i as u64;
            if stratified {
                split_stratified(corpus, f, split_seed)
            } else {
                split(corpus, f, split_seed)
            }
        })
        .collect()
}
