//! Vocabulary construction, per-term corpus statistics, and TF-IDF weighting
//! in two variants.
//!
//! [`Weighting::Standard`] is the textbook formulation: `tf = tf_raw`,
//! `idf = log10(N / df)`. [`Weighting::CorpusNormalized`] normalizes both
//! factors by a term's total occurrence count across the corpus:
//! `tf = tf_raw / cf`, `idf = log10(N / cf)`. The corpus-normalized variant
//! admits negative weights for terms whose total count exceeds the number of
//! documents; its per-term TF values sum to exactly 1 over the corpus.
//!
//! A fitted [`TfIdfModel`] is immutable: transforming unseen documents never
//! grows the vocabulary or changes the statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::preprocess::TokenizedDocument;

/// TF-IDF weighting variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    /// `tf = tf_raw / cf(t)`, `idf = log10(N / cf(t))`.
    CorpusNormalized,
    /// `tf = tf_raw`, `idf = log10(N / df(t))`.
    Standard,
}

impl Weighting {
    pub fn tag(self) -> &'static str {
        match self {
            Weighting::CorpusNormalized => "corpus-normalized",
            Weighting::Standard => "standard",
        }
    }

    pub fn parse(value: &str) -> Result<Self, VectorizeError> {
        match value.trim().to_lowercase().as_str() {
            "corpus-normalized" | "corpus_normalized" => Ok(Weighting::CorpusNormalized),
            "standard" => Ok(Weighting::Standard),
            _ => Err(VectorizeError::UnknownVariant(value.to_string())),
        }
    }
}

/// Errors from fitting and applying TF-IDF models.
#[derive(Debug, Error)]
pub enum VectorizeError {
    #[error("cannot fit on an empty corpus")]
    EmptyCorpus,
    #[error("term {0:?} not in vocabulary")]
    UnknownTerm(String),
    #[error("unknown weighting variant {0:?} (expected \"corpus-normalized\" or \"standard\")")]
    UnknownVariant(String),
}

/// Bijection between terms and column indices `0..len`.
///
/// Terms are stored in lexicographic order, so the mapping is canonical for a
/// given training token set regardless of document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    fn from_terms(terms: Vec<String>) -> Self {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }
}

/// Per-term corpus statistics gathered during fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermStats {
    /// Number of training documents (N).
    doc_count: usize,
    /// df(t): number of documents containing term t.
    df: Vec<usize>,
    /// cf(t): total occurrences of term t across the corpus.
    cf: Vec<usize>,
}

impl TermStats {
    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn df(&self, index: usize) -> usize {
        self.df[index]
    }

    pub fn cf(&self, index: usize) -> usize {
        self.cf[index]
    }
}

/// Sparse document vector: `(term index, weight)` entries sorted by index.
/// Entries with weight exactly 0 are dropped; consumers treat missing as 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DocumentVector {
    entries: Vec<(usize, f64)>,
}

impl DocumentVector {
    pub fn from_entries(mut entries: Vec<(usize, f64)>) -> Self {
        entries.retain(|&(_, w)| w != 0.0);
        entries.sort_by_key(|&(i, _)| i);
        DocumentVector { entries }
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    /// Sparse dot product (merge join over sorted indices).
    pub fn dot(&self, other: &DocumentVector) -> f64 {
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        let mut sum = 0.0;
        while let (Some(&&(ia, wa)), Some(&&(ib, wb))) = (a.peek(), b.peek()) {
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum += wa * wb;
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Cosine similarity; vectors with zero norm get similarity 0.
    pub fn cosine(&self, other: &DocumentVector) -> f64 {
        let denom = self.norm() * other.norm();
        if denom == 0.0 {
            0.0
        } else {
            self.dot(other) / denom
        }
    }
}

/// A fitted TF-IDF model: vocabulary, term statistics, and the weighting
/// variant. Frozen after [`fit`]; all queries are pure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "TfIdfModelRepr", try_from = "TfIdfModelRepr")]
pub struct TfIdfModel {
    vocabulary: Vocabulary,
    stats: TermStats,
    variant: Weighting,
}

/// Fit a TF-IDF model on tokenized training documents.
///
/// The vocabulary is every distinct training token in lexicographic order;
/// df/cf counts are exact.
pub fn fit(docs: &[TokenizedDocument], variant: Weighting) -> Result<TfIdfModel, VectorizeError> {
    if docs.is_empty() {
        return Err(VectorizeError::EmptyCorpus);
    }
    let term_set: BTreeSet<&str> = docs
        .iter()
        .flat_map(|d| d.tokens.iter().map(String::as_str))
        .collect();
    let terms: Vec<String> = term_set.into_iter().map(str::to_string).collect();
    let vocabulary = Vocabulary::from_terms(terms);

    let mut df = vec![0usize; vocabulary.len()];
    let mut cf = vec![0usize; vocabulary.len()];
    for doc in docs {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for token in &doc.tokens {
            let idx = vocabulary
                .index_of(token)
                .expect("vocabulary covers all training tokens");
            *counts.entry(idx).or_insert(0) += 1;
        }
        for (idx, count) in counts {
            df[idx] += 1;
            cf[idx] += count;
        }
    }

    Ok(TfIdfModel {
        stats: TermStats {
            doc_count: docs.len(),
            df,
            cf,
        },
        vocabulary,
        variant,
    })
}

impl TfIdfModel {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn stats(&self) -> &TermStats {
        &self.stats
    }

    pub fn variant(&self) -> Weighting {
        self.variant
    }

    fn term_index(&self, term: &str) -> Result<usize, VectorizeError> {
        self.vocabulary
            .index_of(term)
            .ok_or_else(|| VectorizeError::UnknownTerm(term.to_string()))
    }

    fn idf_at(&self, index: usize) -> f64 {
        let n = self.stats.doc_count as f64;
        match self.variant {
            Weighting::CorpusNormalized => (n / self.stats.cf[index] as f64).log10(),
            Weighting::Standard => (n / self.stats.df[index] as f64).log10(),
        }
    }

    fn tf_from_count(&self, raw: usize, index: usize) -> f64 {
        match self.variant {
            Weighting::CorpusNormalized => raw as f64 / self.stats.cf[index] as f64,
            Weighting::Standard => raw as f64,
        }
    }

    fn weight_from_count(&self, raw: usize, index: usize) -> f64 {
        self.tf_from_count(raw, index) * self.idf_at(index)
    }

    /// Inverse document frequency of a vocabulary term.
    pub fn idf(&self, term: &str) -> Result<f64, VectorizeError> {
        Ok(self.idf_at(self.term_index(term)?))
    }

    /// Term frequency of a vocabulary term in a document (0 when absent).
    pub fn tf(&self, term: &str, doc: &TokenizedDocument) -> Result<f64, VectorizeError> {
        let index = self.term_index(term)?;
        let raw = doc.tokens.iter().filter(|t| t.as_str() == term).count();
        Ok(self.tf_from_count(raw, index))
    }

    /// `tf * idf` under the model's variant.
    pub fn weight(&self, term: &str, doc: &TokenizedDocument) -> Result<f64, VectorizeError> {
        let index = self.term_index(term)?;
        let raw = doc.tokens.iter().filter(|t| t.as_str() == term).count();
        Ok(self.weight_from_count(raw, index))
    }

    /// Sparse weight vector for a document. Out-of-vocabulary tokens are
    /// ignored; use [`TfIdfModel::oov_count`] to diagnose them.
    pub fn transform(&self, doc: &TokenizedDocument) -> DocumentVector {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for token in &doc.tokens {
            if let Some(idx) = self.vocabulary.index_of(token) {
                *counts.entry(idx).or_insert(0) += 1;
            }
        }
        let entries = counts
            .into_iter()
            .map(|(idx, raw)| (idx, self.weight_from_count(raw, idx)))
            .filter(|&(_, w)| w != 0.0)
            .collect();
        DocumentVector { entries }
    }

    /// Raw token counts over the vocabulary (for count-based classifiers).
    /// Out-of-vocabulary tokens are skipped.
    pub fn term_counts(&self, doc: &TokenizedDocument) -> Vec<(usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for token in &doc.tokens {
            if let Some(idx) = self.vocabulary.index_of(token) {
                *counts.entry(idx).or_insert(0) += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// Number of tokens in the document that are not in the vocabulary.
    pub fn oov_count(&self, doc: &TokenizedDocument) -> usize {
        doc.tokens
            .iter()
            .filter(|t| self.vocabulary.index_of(t).is_none())
            .count()
    }
}

/// Wire representation of a fitted model: vocabulary array with per-term
/// statistics, document count, and variant tag. Integer statistics reload
/// bit-exactly.
#[derive(Serialize, Deserialize, Clone)]
struct TfIdfModelRepr {
    variant: Weighting,
    doc_count: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize, Clone)]
struct TermRepr {
    term: String,
    df: usize,
    cf: usize,
}

impl From<TfIdfModel> for TfIdfModelRepr {
    fn from(model: TfIdfModel) -> Self {
        let terms = model
            .vocabulary
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| TermRepr {
                term: t.clone(),
                df: model.stats.df[i],
                cf: model.stats.cf[i],
            })
            .collect();
        TfIdfModelRepr {
            variant: model.variant,
            doc_count: model.stats.doc_count,
            terms,
        }
    }
}

impl TryFrom<TfIdfModelRepr> for TfIdfModel {
    type Error = String;

    fn try_from(repr: TfIdfModelRepr) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(repr.terms.len());
        let mut df = Vec::with_capacity(repr.terms.len());
        let mut cf = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            if t.df == 0 || t.df > repr.doc_count || t.cf < t.df {
                return Err(format!(
                    "inconsistent stats for term {:?}: df={}, cf={}, N={}",
                    t.term, t.df, t.cf, repr.doc_count
                ));
            }
            terms.push(t.term);
            df.push(t.df);
            cf.push(t.cf);
        }
        Ok(TfIdfModel {
            vocabulary: Vocabulary::from_terms(terms),
            stats: TermStats {
                doc_count: repr.doc_count,
                df,
                cf,
            },
            variant: repr.variant,
        })
    }
}
