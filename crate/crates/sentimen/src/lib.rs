//! Sentiment-analysis workbench for small labeled corpora.
//!
//! The crate walks a labeled document collection through a fixed pipeline:
//!
//! 1. [`corpus`] — load CSV/JSONL corpora, validate them, and produce
//!    deterministic seeded train/test splits and split sweeps.
//! 2. [`preprocess`] — punctuation removal, case folding, whitespace
//!    tokenization, and stopword filtering, each stage inspectable on its own.
//! 3. [`vectorize`] — vocabulary construction and TF-IDF weighting in two
//!    variants (standard, and corpus-normalized where both factors divide by
//!    a term's total corpus count).
//! 4. [`classifiers`] — four from-scratch learners sharing one facade:
//!    multinomial naive Bayes, k-nearest-neighbors over cosine similarity,
//!    a Gini decision tree, and a single-hidden-layer perceptron.
//! 5. [`eval`] — accuracy, confusion matrices, threshold checks, and
//!    train-fraction sweeps with CSV/JSON/SVG reporting.
//!
//! Everything downstream of a `(corpus, seed)` pair is deterministic: splits,
//! trained models, predictions, and sweep artifacts reproduce byte-for-byte.
//!
//! The `examples/` directory holds one runnable walkthrough per capability;
//! start with `examples/train_and_predict.rs`. The same functionality is
//! scriptable through the thin `sentimen` binary.

pub mod classifiers;
pub mod config;
pub mod corpus;
pub mod eval;
pub mod preprocess;
pub mod vectorize;

pub use classifiers::{train, Method, TrainConfig, TrainedModel};
pub use corpus::{load_corpus, Corpus, CorpusFormat, DataSplit, Label, LabeledDocument};
pub use eval::{accuracy, run_sweep, ConfusionMatrix, EvalReport, SweepReport};
pub use preprocess::{Preprocessor, StopwordList, TokenizedDocument};
pub use vectorize::{fit, TfIdfModel, Weighting};
