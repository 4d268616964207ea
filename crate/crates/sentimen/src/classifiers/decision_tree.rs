//! CART-style binary decision tree on TF-IDF features with Gini impurity.
//!
//! Split search is fully deterministic and documented so an independent
//! enumeration picks the identical split:
//!
//! * candidate thresholds are the midpoints `(a + b) / 2` of adjacent
//!   distinct observed values of a feature, sorted ascending;
//! * a document goes left when `value <= threshold`;
//! * split quality is `(n_l * gini_l + n_r * gini_r) / n` with
//!   `gini = 1 - (neg² + pos²) / total²`, evaluated in exactly that f64
//!   expression order;
//! * features are scanned in ascending vocabulary index, thresholds in
//!   ascending value order, and only a strictly smaller score replaces the
//!   incumbent — the first best candidate wins.
//!
//! Growth stops at pure nodes, at `max_depth`, or when no candidate leaves
//! `min_leaf` documents on each side. Leaves predict their majority label;
//! an exact tie predicts Negative (the lexicographically earlier tag).

use serde::{Deserialize, Serialize};

use super::{label_counts, ClassifierError, Prediction};
use crate::corpus::Label;
use crate::vectorize::DocumentVector;

/// Gini impurity of a node from its label counts, in the documented
/// expression order.
fn gini(neg: usize, pos: usize) -> f64 {
    let total = (neg + pos) as f64;
    1.0 - ((neg as f64) * (neg as f64) + (pos as f64) * (pos as f64)) / (total * total)
}

/// Size-weighted Gini of a candidate split, in the documented expression
/// order.
fn weighted_gini(l_neg: usize, l_pos: usize, r_neg: usize, r_pos: usize) -> f64 {
    let n = (l_neg + l_pos + r_neg + r_pos) as f64;
    ((l_neg + l_pos) as f64 * gini(l_neg, l_pos) + (r_neg + r_pos) as f64 * gini(r_neg, r_pos)) / n
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Node {
    Leaf {
        neg: usize,
        pos: usize,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// A trained decision tree as a flat node list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtModel {
    nodes: Vec<Node>,
    root: usize,
}

/// The best `(feature, threshold)` for a node, or `None` when every candidate
/// violates `min_leaf` or no feature has two distinct values.
///
/// Sparse equivalent of brute-force enumeration: features with no nonzero
/// entry among the node's documents have a single observed value (0) and
/// produce no candidates, so only touched features are visited. Partition
/// counts are computed by explicit `value <= threshold` comparisons against
/// the aggregated distinct values, not by prefix position, so midpoint
/// rounding behaves exactly as in a dense scan.
fn best_split(
    vectors: &[DocumentVector],
    labels: &[Label],
    indices: &[usize],
    min_leaf: usize,
) -> Option<(usize, f64)> {
    let node_labels: Vec<Label> = indices.iter().map(|&i| labels[i]).collect();
    let (node_neg, node_pos) = label_counts(&node_labels);
    let n = indices.len();

    // feature -> nonzero (value, label) observations among the node's docs.
    let mut touched: std::collections::BTreeMap<usize, Vec<(f64, Label)>> =
        std::collections::BTreeMap::new();
    for &i in indices {
        for &(feature, value) in vectors[i].entries() {
            touched.entry(feature).or_default().push((value, labels[i]));
        }
    }

    let mut best: Option<(usize, f64, f64)> = None;
    for (feature, mut observed) in touched {
        observed.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Aggregate label counts per distinct value.
        let mut values: Vec<(f64, usize, usize)> = Vec::new();
        for (value, label) in observed {
            match values.last_mut() {
                Some(last) if last.0 == value => match label {
                    Label::Negative => last.1 += 1,
                    Label::Positive => last.2 += 1,
                },
                _ => {
                    let (neg, pos) = match label {
                        Label::Negative => (1, 0),
                        Label::Positive => (0, 1),
                    };
                    values.push((value, neg, pos));
                }
            }
        }
        // Documents without this feature observe the value 0.
        let nz_neg: usize = values.iter().map(|v| v.1).sum();
        let nz_pos: usize = values.iter().map(|v| v.2).sum();
        let (zero_neg, zero_pos) = (node_neg - nz_neg, node_pos - nz_pos);
        if zero_neg + zero_pos > 0 {
            let at = values.partition_point(|v| v.0 < 0.0);
            values.insert(at, (0.0, zero_neg, zero_pos));
        }

        for pair in values.windows(2) {
            let threshold = (pair[0].0 + pair[1].0) / 2.0;
            let (mut l_neg, mut l_pos) = (0, 0);
            for &(value, neg, pos) in &values {
                if value <= threshold {
                    l_neg += neg;
                    l_pos += pos;
                }
            }
            let (r_neg, r_pos) = (node_neg - l_neg, node_pos - l_pos);
            let (l_total, r_total) = (l_neg + l_pos, r_neg + r_pos);
            if l_total < min_leaf || r_total < min_leaf || l_total == 0 || r_total == n {
                continue;
            }
            let score = weighted_gini(l_neg, l_pos, r_neg, r_pos);
            if best.is_none_or(|(_, _, s)| score < s) {
                best = Some((feature, threshold, score));
            }
        }
    }
    best.map(|(feature, threshold, _)| (feature, threshold))
}

fn build(
    nodes: &mut Vec<Node>,
    vectors: &[DocumentVector],
    labels: &[Label],
    indices: &[usize],
    depth: usize,
    max_depth: Option<usize>,
    min_leaf: usize,
) -> usize {
    let node_labels: Vec<Label> = indices.iter().map(|&i| labels[i]).collect();
    let (neg, pos) = label_counts(&node_labels);
    let depth_allows = max_depth.is_none_or(|d| depth < d);
    let split = if neg > 0 && pos > 0 && depth_allows {
        best_split(vectors, labels, indices, min_leaf)
    } else {
        None
    };
    match split {
        Some((feature, threshold)) => {
            let (left_docs, right_docs): (Vec<usize>, Vec<usize>) = indices
                .iter()
                .partition(|&&i| vectors[i].get(feature) <= threshold);
            let left = build(
                nodes,
                vectors,
                labels,
                &left_docs,
                depth + 1,
                max_depth,
                min_leaf,
            );
            let right = build(
                nodes,
                vectors,
                labels,
                &right_docs,
                depth + 1,
                max_depth,
                min_leaf,
            );
            nodes.push(Node::Split {
                feature,
                threshold,
                left,
                right,
            });
        }
        None => nodes.push(Node::Leaf { neg, pos }),
    }
    nodes.len() - 1
}

impl DtModel {
    /// Grow a tree on TF-IDF document vectors and aligned labels.
    pub fn fit(
        vectors: &[DocumentVector],
        labels: &[Label],
        _vocab_size: usize,
        max_depth: Option<usize>,
        min_leaf: usize,
    ) -> Result<DtModel, ClassifierError> {
        assert_eq!(
            vectors.len(),
            labels.len(),
            "vectors/labels length mismatch"
        );
        if vectors.is_empty() {
            return Err(ClassifierError::EmptyTrainingSet);
        }
        if min_leaf == 0 {
            return Err(ClassifierError::InvalidConfig(
                "dt_min_leaf must be >= 1".to_string(),
            ));
        }
        let indices: Vec<usize> = (0..vectors.len()).collect();
        let mut nodes = Vec::new();
        let root = build(
            &mut nodes, vectors, labels, &indices, 0, max_depth, min_leaf,
        );
        Ok(DtModel { nodes, root })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Depth of the tree (a lone leaf has depth 0).
    pub fn depth(&self) -> usize {
        fn depth_of(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => {
                    1 + depth_of(nodes, left).max(depth_of(nodes, right))
                }
            }
        }
        depth_of(&self.nodes, self.root)
    }

    /// The root node's `(feature, threshold)`, or `None` for a leaf-only tree.
    pub fn root_split(&self) -> Option<(usize, f64)> {
        match self.nodes[self.root] {
            Node::Split {
                feature, threshold, ..
            } => Some((feature, threshold)),
            Node::Leaf { .. } => None,
        }
    }

    /// Walk the tree. The score is the Positive share of the reached leaf's
    /// training distribution; a tied leaf predicts Negative.
    pub fn predict(&self, vector: &DocumentVector) -> Prediction {
        let mut at = self.root;
        loop {
            match self.nodes[at] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if vector.get(feature) <= threshold {
                        left
                    } else {
                        right
                    };
                }
                Node::Leaf { neg, pos } => {
                    let score = pos as f64 / (neg + pos) as f64;
                    let label = if pos > neg {
                        Label::Positive
                    } else {
                        Label::Negative
                    };
                    return Prediction { label, score };
                }
            }
        }
    }

    /// Leaf sizes, for structural assertions.
    #[cfg(test)]
    fn leaf_sizes(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf { neg, pos } => Some(neg + pos),
                Node::Split { .. } => None,
            })
            .collect()
    }
}
