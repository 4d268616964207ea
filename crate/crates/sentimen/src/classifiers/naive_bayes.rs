//! Multinomial naive Bayes over raw term counts with Laplace smoothing.
//!
//! The event model is the standard multinomial text formulation: a class is
//! a bag of term draws, `prior(c) = |c| / n` and
//! `likelihood(t|c) = (count(t,c) + α) / (count(·,c) + α·|V|)`. Training and
//! prediction use raw token counts, not TF-IDF weights, so likelihoods are
//! well-defined probabilities (per class they sum to 1 over the vocabulary
//! whenever the denominator is positive).

use serde::{Deserialize, Serialize};

use super::{label_counts, ClassifierError, Prediction};
use crate::corpus::Label;

/// Trained naive Bayes parameters. Log-space tables; `[f64; 2]` entries are
/// indexed by [`Label::index`] (Negative = 0, Positive = 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel {
    /// Training documents per class.
    class_docs: [usize; 2],
    log_prior: [f64; 2],
    /// Per-term class-conditional log-likelihoods, indexed by term.
    log_likelihood: Vec<[f64; 2]>,
    alpha: f64,
}

impl NbModel {
    /// Fit on per-document sparse term counts (`(term index, count)` pairs)
    /// and aligned labels. Requires at least one document of each class.
    pub fn fit(
        counts: &[Vec<(usize, usize)>],
        labels: &[Label],
        vocab_size: usize,
        alpha: f64,
    ) -> Result<NbModel, ClassifierError> {
        assert_eq!(counts.len(), labels.len(), "counts/labels length mismatch");
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(ClassifierError::InvalidConfig(
                "nb_alpha must be a non-negative finite number".to_string(),
            ));
        }
        let (neg, pos) = label_counts(labels);
        if neg == 0 {
            return Err(ClassifierError::MissingClass(Label::Negative));
        }
        if pos == 0 {
            return Err(ClassifierError::MissingClass(Label::Positive));
        }

        let mut term_counts = vec![[0usize; 2]; vocab_size];
        let mut total_counts = [0usize; 2];
        for (doc, label) in counts.iter().zip(labels) {
            let c = label.index();
            for &(term, count) in doc {
                term_counts[term][c] += count;
                total_counts[c] += count;
            }
        }

        let n = labels.len() as f64;
        let log_prior = [(neg as f64 / n).ln(), (pos as f64 / n).ln()];
        let log_likelihood = term_counts
            .iter()
            .map(|tc| {
                let mut row = [0.0; 2];
                for c in 0..2 {
                    let denom = total_counts[c] as f64 + alpha * vocab_size as f64;
                    row[c] = if denom > 0.0 {
                        ((tc[c] as f64 + alpha) / denom).ln()
                    } else {
                        // α = 0 and a class with no tokens at all: every term
                        // has probability 0 under that class.
                        f64::NEG_INFINITY
                    };
                }
                row
            })
            .collect();

        Ok(NbModel {
            class_docs: [neg, pos],
            log_prior,
            log_likelihood,
            alpha,
        })
    }

    /// Prior probability of a class.
    pub fn prior(&self, label: Label) -> f64 {
        self.log_prior[label.index()].exp()
    }

    /// Smoothed class-conditional likelihood of a vocabulary term.
    pub fn likelihood(&self, term: usize, label: Label) -> f64 {
        self.log_likelihood[term][label.index()].exp()
    }

    /// Normalized posterior `[P(Negative | d), P(Positive | d)]`; the two
    /// entries sum to exactly 1. Terms outside the vocabulary must already be
    /// absent from `counts`. An empty document is scored by the priors alone.
    pub fn posterior(&self, counts: &[(usize, usize)]) -> [f64; 2] {
        let mut score = self.log_prior;
        for &(term, count) in counts {
            if count == 0 {
                continue;
            }
            score[0] += count as f64 * self.log_likelihood[term][0];
            score[1] += count as f64 * self.log_likelihood[term][1];
        }
        let max = score[0].max(score[1]);
        if max == f64::NEG_INFINITY {
            // Both classes assign probability 0 (only reachable with α = 0
            // and degenerate token totals): fall back to indifference.
            return [0.5, 0.5];
        }
        let e_neg = (score[0] - max).exp();
        let e_pos = (score[1] - max).exp();
        let p_pos = e_pos / (e_neg + e_pos);
        [1.0 - p_pos, p_pos]
    }

    /// Classify sparse term counts: argmax of the posterior, with score the
    /// Positive-class posterior. Label is Positive exactly when score ≥ 0.5.
    pub fn predict(&self, counts: &[(usize, usize)]) -> Prediction {
        let [_, p_pos] = self.posterior(counts);
        let label = if p_pos >= 0.5 {
            Label::Positive
        } else {
            Label::Negative
        };
        Prediction {
            label,
            score: p_pos,
        }
    }
}
