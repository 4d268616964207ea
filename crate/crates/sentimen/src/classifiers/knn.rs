//! K-nearest-neighbors over cosine similarity of TF-IDF vectors.
//!
//! Prediction ranks the stored training vectors by cosine similarity to the
//! query (zero-norm vectors have similarity 0 to everything) and takes the
//! majority label of the top `k`. Every step is deterministic: similarity
//! ties are broken toward the lower document ordinal, and a tied vote (even
//! `k`) is broken by the single nearest neighbor's label.
//!
//! Ordinals are the documents' positions in the training corpus and act as a
//! stable identity: training on a permuted corpus with the original ordinals
//! attached yields identical predictions.

use serde::{Deserialize, Serialize};

use super::{ClassifierError, Prediction};
use crate::corpus::Label;
use crate::vectorize::DocumentVector;

/// Trained (memorized) KNN state: vectors, labels, tie-break ordinals, `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    vectors: Vec<DocumentVector>,
    labels: Vec<Label>,
    ordinals: Vec<usize>,
    k: usize,
}

impl KnnModel {
    /// Memorize training vectors in corpus order (ordinal = position).
    pub fn fit(
        vectors: Vec<DocumentVector>,
        labels: Vec<Label>,
        k: usize,
    ) -> Result<KnnModel, ClassifierError> {
        let ordinals = (0..vectors.len()).collect();
        Self::fit_with_ordinals(vectors, labels, ordinals, k)
    }

    /// Memorize training vectors with explicit tie-break ordinals, for
    /// callers whose storage order differs from document identity order.
    /// Ordinals must be pairwise distinct.
    pub fn fit_with_ordinals(
        vectors: Vec<DocumentVector>,
        labels: Vec<Label>,
        ordinals: Vec<usize>,
        k: usize,
    ) -> Result<KnnModel, ClassifierError> {
        assert_eq!(
            vectors.len(),
            labels.len(),
            "vectors/labels length mismatch"
        );
        assert_eq!(
            vectors.len(),
            ordinals.len(),
            "vectors/ordinals length mismatch"
        );
        if k == 0 {
            return Err(ClassifierError::InvalidConfig(
                "knn_k must be >= 1".to_string(),
            ));
        }
        if k > vectors.len() {
            return Err(ClassifierError::KTooLarge {
                k,
                n: vectors.len(),
            });
        }
        {
            let mut seen = ordinals.clone();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), ordinals.len(), "ordinals must be distinct");
        }
        Ok(KnnModel {
            vectors,
            labels,
            ordinals,
            k,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Training documents ranked for a query: by similarity descending, then
    /// ordinal ascending. Returns `(storage index, similarity)` pairs.
    fn ranked(&self, query: &DocumentVector) -> Vec<(usize, f64)> {
        let mut ranked: Vec<(usize, f64)> = self
            .vectors
            .iter()
            .map(|v| query.cosine(v))
            .enumerate()
            .collect();
        ranked.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| self.ordinals[a.0].cmp(&self.ordinals[b.0]))
        });
        ranked
    }

    /// Majority vote among the `k` nearest training documents. The score is
    /// the fraction of Positive votes; a tied vote defers to the nearest
    /// neighbor, so at exactly 0.5 either label can legitimately appear.
    pub fn predict(&self, query: &DocumentVector) -> Prediction {
        let ranked = self.ranked(query);
        let top = &ranked[..self.k];
        let pos_votes = top
            .iter()
            .filter(|(i, _)| self.labels[*i] == Label::Positive)
            .count();
        let label = match (2 * pos_votes).cmp(&self.k) {
            std::cmp::Ordering::Greater => Label::Positive,
            std::cmp::Ordering::Less => Label::Negative,
            std::cmp::Ordering::Equal => self.labels[top[0].0],
        };
        Prediction {
            label,
            score: pos_votes as f64 / self.k as f64,
        }
    }
}
