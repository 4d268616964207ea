//! Accuracy, confusion matrices, the 80% advisory threshold check, the
//! train-fraction sweep harness, and report emission (CSV, JSON, SVG chart).
//!
//! A sweep runs every `(train fraction, method)` combination: each fraction
//! gets its own seeded split, TF-IDF is refit on that split's training half
//! only (so test vocabulary never leaks into a model), the method is trained,
//! and the test half is scored. Rows are merged in the deterministic order
//! `(train_fraction, method tag)`, so serial and parallel execution produce
//! identical reports — timing aside, which is recorded for diagnostics and
//! excluded from the deterministic CSV format.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classifiers::{self, ClassifierError, Method, TrainConfig};
use crate::corpus::{self, Corpus, CorpusError, DataSplit, Label};
use crate::preprocess::StopwordList;
use crate::vectorize::Weighting;

/// Errors from evaluation and sweep execution.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prediction/gold length mismatch: {predictions} vs {gold}")]
    LengthMismatch { predictions: usize, gold: usize },
    #[error("cannot evaluate an empty prediction set")]
    Empty,
    #[error("sweep needs at least one method")]
    NoMethods,
    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Binary confusion counts with Positive as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    #[serde(rename = "tp")]
    pub true_pos: usize,
    #[serde(rename = "fp")]
    pub false_pos: usize,
    #[serde(rename = "tn")]
    pub true_neg: usize,
    #[serde(rename = "fn")]
    pub false_neg: usize,
}

impl ConfusionMatrix {
    /// Tally predictions against gold labels (equal, non-empty slices).
    pub fn from_labels(predictions: &[Label], gold: &[Label]) -> Result<Self, EvalError> {
        if predictions.len() != gold.len() {
            return Err(EvalError::LengthMismatch {
                predictions: predictions.len(),
                gold: gold.len(),
            });
        }
        if predictions.is_empty() {
            return Err(EvalError::Empty);
        }
        let mut m = ConfusionMatrix {
            true_pos: 0,
            false_pos: 0,
            true_neg: 0,
            false_neg: 0,
        };
        for (&p, &g) in predictions.iter().zip(gold) {
            match (p, g) {
                (Label::Positive, Label::Positive) => m.true_pos += 1,
                (Label::Positive, Label::Negative) => m.false_pos += 1,
                (Label::Negative, Label::Negative) => m.true_neg += 1,
                (Label::Negative, Label::Positive) => m.false_neg += 1,
            }
        }
        Ok(m)
    }

    pub fn total(&self) -> usize {
        self.true_pos + self.false_pos + self.true_neg + self.false_neg
    }

    /// `(tp + tn) / total`.
    pub fn accuracy(&self) -> f64 {
        (self.true_pos + self.true_neg) as f64 / self.total() as f64
    }
}

/// Fraction of exact label matches.
pub fn accuracy(predictions: &[Label], gold: &[Label]) -> Result<f64, EvalError> {
    Ok(ConfusionMatrix::from_labels(predictions, gold)?.accuracy())
}

/// One evaluated `(split, method)` cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: Method,
    pub train_fraction: f64,
    pub accuracy: f64,
    pub confusion: ConfusionMatrix,
    pub seed: u64,
    /// Wall-clock train+evaluate time. Diagnostic only: excluded from all
    /// serialized artifacts so identical-seed reruns stay byte-identical.
    #[serde(skip, default)]
    pub elapsed_ms: u64,
}

/// Advisory accuracy threshold below which more labeled training data should
/// be collected.
pub const DEFAULT_ACCURACY_THRESHOLD: f64 = 0.8;

/// Outcome of [`threshold_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdOutcome {
    Pass,
    NeedMoreTrainingData,
}

/// Compare a report's accuracy against an advisory threshold (inclusive:
/// exactly meeting the threshold passes). No retraining is triggered; the
/// outcome is a recommendation for the corpus owner.
pub fn threshold_check(report: &EvalReport, threshold: f64) -> ThresholdOutcome {
    if report.accuracy >= threshold {
        ThresholdOutcome::Pass
    } else {
        ThresholdOutcome::NeedMoreTrainingData
    }
}

/// Full sweep result: one row per `(train fraction, method)`, ordered by
/// that key, plus the fingerprint of the corpus that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Lowercase hex SHA-256 of the canonicalized corpus (documents as JSON).
    pub corpus_fingerprint: String,
    pub weighting: Weighting,
    pub seed: u64,
    pub rows: Vec<EvalReport>,
}

/// Train-fraction range of a sweep: `start, start+step, ..., end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub start: f64,
    pub end: f64,
    pub step: f64,
    /// Use label-stratified splits instead of plain shuffled splits.
    pub stratified: bool,
}

impl SweepConfig {
    /// The eleven-point default range 0.25..=0.75 in steps of 0.05.
    pub fn default_range() -> SweepConfig {
        SweepConfig {
            start: 0.25,
            end: 0.75,
            step: 0.05,
            stratified: false,
        }
    }
}

/// Content fingerprint of a corpus: SHA-256 over the canonical JSON form of
/// its documents, so the same content hashes identically whether it arrived
/// as CSV or JSONL.
pub fn corpus_fingerprint(corpus: &Corpus) -> String {
    let canonical = serde_json::to_vec(corpus.documents()).expect("documents serialize infallibly");
    let digest = Sha256::digest(&canonical);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

/// Evaluate one trained method on one split.
fn run_cell(
    split: &DataSplit,
    method: Method,
    stopwords: &StopwordList,
    weighting: Weighting,
    config: &TrainConfig,
) -> Result<EvalReport, EvalError> {
    let started = Instant::now();
    let model = classifiers::train(
        method,
        split.train.documents(),
        stopwords.clone(),
        weighting,
        config,
    )?;
    let predictions: Vec<Label> = split
        .test
        .iter()
        .map(|d| model.predict_text(&d.text).label)
        .collect();
    let gold: Vec<Label> = split.test.iter().map(|d| d.label).collect();
    let confusion = ConfusionMatrix::from_labels(&predictions, &gold)?;
    Ok(EvalReport {
        method,
        train_fraction: split.train_fraction,
        accuracy: confusion.accuracy(),
        confusion,
        seed: split.seed,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Run the full sweep: one seeded split per fraction, every method trained
/// and evaluated per split.
///
/// `jobs` bounds worker threads: 1 runs serially, 0 uses all cores. Output
/// is identical for every `jobs` value.
pub fn run_sweep(
    corpus: &Corpus,
    methods: &[Method],
    sweep: &SweepConfig,
    train_config: &TrainConfig,
    stopwords: &StopwordList,
    weighting: Weighting,
    jobs: usize,
) -> Result<SweepReport, EvalError> {
    if methods.is_empty() {
        return Err(EvalError::NoMethods);
    }
    train_config.validate()?;
    let splits = corpus::sweep_splits_with(
        corpus,
        sweep.start,
        sweep.end,
        sweep.step,
        train_config.seed,
        sweep.stratified,
    )?;
    let cells: Vec<(&DataSplit, Method)> = splits
        .iter()
        .flat_map(|s| methods.iter().map(move |&m| (s, m)))
        .collect();

    let run_all = || {
        cells
            .par_iter()
            .map(|&(split, method)| run_cell(split, method, stopwords, weighting, train_config))
            .collect::<Result<Vec<EvalReport>, EvalError>>()
    };
    let mut rows = if jobs == 1 {
        cells
            .iter()
            .map(|&(split, method)| run_cell(split, method, stopwords, weighting, train_config))
            .collect::<Result<Vec<EvalReport>, EvalError>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| EvalError::ThreadPool(e.to_string()))?;
        pool.install(run_all)?
    };

    rows.sort_by(|a, b| {
        a.train_fraction
            .total_cmp(&b.train_fraction)
            .then_with(|| a.method.tag().cmp(b.method.tag()))
    });
    Ok(SweepReport {
        corpus_fingerprint: corpus_fingerprint(corpus),
        weighting,
        seed: train_config.seed,
        rows,
    })
}

impl SweepReport {
    /// Mean accuracy per method over all rows, `(method, mean)` sorted by tag.
    pub fn mean_accuracy_by_method(&self) -> Vec<(Method, f64)> {
        let mut methods: Vec<Method> = self.rows.iter().map(|r| r.method).collect();
        methods.sort_by_key(|m| m.tag());
        methods.dedup();
        methods
            .into_iter()
            .map(|m| {
                let accs: Vec<f64> = self
                    .rows
                    .iter()
                    .filter(|r| r.method == m)
                    .map(|r| r.accuracy)
                    .collect();
                (m, accs.iter().sum::<f64>() / accs.len() as f64)
            })
            .collect()
    }

    /// The winning method per train fraction (ties go to the earlier tag,
    /// which is the row order).
    pub fn best_method_per_fraction(&self) -> Vec<(f64, Method, f64)> {
        let mut result: Vec<(f64, Method, f64)> = Vec::new();
        for row in &self.rows {
            match result.last_mut() {
                Some(last) if last.0 == row.train_fraction => {
                    if row.accuracy > last.2 {
                        *last = (row.train_fraction, row.method, row.accuracy);
                    }
                }
                _ => result.push((row.train_fraction, row.method, row.accuracy)),
            }
        }
        result
    }

    /// Accuracy of one `(fraction, method)` row, matched with tolerance.
    pub fn accuracy_at(&self, fraction: f64, method: Method) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| (r.train_fraction - fraction).abs() < 1e-9 && r.method == method)
            .map(|r| r.accuracy)
    }

    /// Deterministic CSV: header then one row per cell. Fractions print with
    /// four decimals, accuracies with six; timing is deliberately absent, so
    /// reruns with the same seed are byte-identical.
    pub fn write_csv(&self, mut out: impl Write) -> Result<(), EvalError> {
        writeln!(out, "train_fraction,method,accuracy,tp,fp,tn,fn,seed")?;
        for r in &self.rows {
            writeln!(
                out,
                "{:.4},{},{:.6},{},{},{},{},{}",
                r.train_fraction,
                r.method.tag(),
                r.accuracy,
                r.confusion.true_pos,
                r.confusion.false_pos,
                r.confusion.true_neg,
                r.confusion.false_neg,
                r.seed
            )?;
        }
        Ok(())
    }

    /// Pretty JSON of the whole report (includes timing diagnostics).
    pub fn write_json(&self, mut out: impl Write) -> Result<(), EvalError> {
        let json = serde_json::to_string_pretty(self).expect("report serializes infallibly");
        out.write_all(json.as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Parse a report written by [`SweepReport::write_json`].
    pub fn from_json(raw: &str) -> Result<SweepReport, serde_json::Error> {
        serde_json::from_str(raw)
    }

    /// Self-contained SVG chart: accuracy (y, fixed 0..1) against train
    /// fraction (x), one polyline per method plus a legend. All coordinates
    /// print with fixed precision, so output is deterministic.
    pub fn write_svg_chart(&self, mut out: impl Write) -> Result<(), EvalError> {
        const W: f64 = 640.0;
        const H: f64 = 420.0;
        const ML: f64 = 60.0; // left margin
        const MR: f64 = 150.0; // right margin (legend)
        const MT: f64 = 30.0;
        const MB: f64 = 50.0;
        let plot_w = W - ML - MR;
        let plot_h = H - MT - MB;

        let mut fractions: Vec<f64> = self.rows.iter().map(|r| r.train_fraction).collect();
        fractions.sort_by(f64::total_cmp);
        fractions.dedup();
        let (fmin, fmax) = match (fractions.first(), fractions.last()) {
            (Some(&a), Some(&b)) if b > a => (a, b),
            (Some(&a), _) => (a - 0.05, a + 0.05),
            _ => (0.0, 1.0),
        };
        let x_of = |f: f64| ML + (f - fmin) / (fmax - fmin) * plot_w;
        let y_of = |acc: f64| MT + (1.0 - acc) * plot_h;

        let mut methods: Vec<Method> = self.rows.iter().map(|r| r.method).collect();
        methods.sort_by_key(|m| m.tag());
        methods.dedup();
        let color = |m: Method| match m {
            Method::NaiveBayes => "#1f77b4",
            Method::Knn => "#ff7f0e",
            Method::DecisionTree => "#2ca02c",
            Method::Mlp => "#d62728",
        };

        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
             viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
        )?;
        writeln!(out, "  <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>")?;
        writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">\
             Accuracy by training fraction</text>",
            ML + plot_w / 2.0
        )?;
        // Horizontal gridlines every 0.1 accuracy.
        for i in 0..=10 {
            let acc = i as f64 / 10.0;
            let y = y_of(acc);
            writeln!(
                out,
                "  <line x1=\"{ML:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
                 stroke=\"#dddddd\"/>",
                ML + plot_w
            )?;
            writeln!(
                out,
                "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{acc:.1}</text>",
                ML - 8.0,
                y + 4.0
            )?;
        }
        // X ticks at each fraction.
        for &f in &fractions {
            let x = x_of(f);
            writeln!(
                out,
                "  <line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#999999\"/>",
                MT + plot_h,
                MT + plot_h + 5.0
            )?;
            writeln!(
                out,
                "  <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{f:.2}</text>",
                MT + plot_h + 20.0
            )?;
        }
        writeln!(
            out,
            "  <rect x=\"{ML:.1}\" y=\"{MT:.1}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
             fill=\"none\" stroke=\"#333333\"/>"
        )?;
        // One polyline per method.
        for (i, &m) in methods.iter().enumerate() {
            let mut points = String::new();
            for row in self.rows.iter().filter(|r| r.method == m) {
                points.push_str(&format!(
                    "{:.1},{:.1} ",
                    x_of(row.train_fraction),
                    y_of(row.accuracy)
                ));
            }
            writeln!(
                out,
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
                points.trim_end(),
                color(m)
            )?;
            let ly = MT + 14.0 + 18.0 * i as f64;
            writeln!(
                out,
                "  <line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" \
                 stroke=\"{}\" stroke-width=\"2\"/>",
                ML + plot_w + 12.0,
                ML + plot_w + 36.0,
                color(m)
            )?;
            writeln!(
                out,
                "  <text x=\"{:.1}\" y=\"{:.1}\">{}</text>",
                ML + plot_w + 42.0,
                ly + 4.0,
                m.tag()
            )?;
        }
        writeln!(out, "</svg>")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::LabeledDocument;

    fn labels(tags: &str) -> Vec<Label> {
        tags.chars()
            .map(|c| {
                if c == 'p' {
                    Label::Positive
                } else {
                    Label::Negative
                }
            })
            .collect()
    }

    fn report_with_accuracy(acc: f64) -> EvalReport {
        EvalReport {
            method: Method::NaiveBayes,
            train_fraction: 0.5,
            accuracy: acc,
            confusion: ConfusionMatrix {
                true_pos: 0,
                false_pos: 0,
                true_neg: 0,
                false_neg: 0,
            },
            seed: 0,
            elapsed_ms: 0,
        }
    }

    #[test]
    fn accuracy_three_of_four() {
        // Four evaluated rows, one prediction wrong.
        let gold = labels("ppnn");
        let predicted = labels("ppnp");
        assert_eq!(accuracy(&predicted, &gold).unwrap(), 0.75);
    }

    #[test]
    fn accuracy_extremes() {
        let gold = labels("pnpn");
        assert_eq!(accuracy(&gold, &gold).unwrap(), 1.0);
        let flipped = labels("npnp");
        assert_eq!(accuracy(&flipped, &gold).unwrap(), 0.0);
    }

    #[test]
    fn accuracy_rejects_bad_shapes() {
        assert!(matches!(
            accuracy(&labels("pp"), &labels("p")),
            Err(EvalError::LengthMismatch { .. })
        ));
        assert!(matches!(accuracy(&[], &[]), Err(EvalError::Empty)));
    }

    #[test]
    fn confusion_counts_reconcile() {
        let gold = labels("ppppnnn");
        let predicted = labels("ppnnpnn");
        let m = ConfusionMatrix::from_labels(&predicted, &gold).unwrap();
        assert_eq!(m.true_pos, 2);
        assert_eq!(m.false_neg, 2);
        assert_eq!(m.false_pos, 1);
        assert_eq!(m.true_neg, 2);
        assert_eq!(m.total(), gold.len());
        assert_eq!(m.accuracy(), 4.0 / 7.0);
    }

    #[test]
    fn threshold_is_inclusive() {
        assert_eq!(
            threshold_check(&report_with_accuracy(0.75), DEFAULT_ACCURACY_THRESHOLD),
            ThresholdOutcome::NeedMoreTrainingData
        );
        assert_eq!(
            threshold_check(&report_with_accuracy(0.80), DEFAULT_ACCURACY_THRESHOLD),
            ThresholdOutcome::Pass
        );
        assert_eq!(
            threshold_check(&report_with_accuracy(1.0), DEFAULT_ACCURACY_THRESHOLD),
            ThresholdOutcome::Pass
        );
    }

    #[test]
    fn fingerprint_tracks_content_not_container() {
        let docs = vec![
            LabeledDocument {
                id: "a".into(),
                text: "suara rakyat".into(),
                label: Label::Positive,
            },
            LabeledDocument {
                id: "b".into(),
                text: "kacau parah".into(),
                label: Label::Negative,
            },
        ];
        let c1 = Corpus::new(docs.clone()).unwrap();
        let c2 = Corpus::new(docs).unwrap();
        assert_eq!(corpus_fingerprint(&c1), corpus_fingerprint(&c2));
        assert_eq!(corpus_fingerprint(&c1).len(), 64);
        let mut other_docs = c1.documents().to_vec();
        other_docs[0].text = "suara warga".into();
        let c3 = Corpus::new(other_docs).unwrap();
        assert_ne!(corpus_fingerprint(&c1), corpus_fingerprint(&c3));
    }

    fn small_sweep(jobs: usize, methods: &[Method]) -> SweepReport {
        let corpus = Corpus::bundled_demo();
        let config = TrainConfig {
            mlp_epochs: 30,
            ..TrainConfig::new(99)
        };
        run_sweep(
            &corpus,
            methods,
            &SweepConfig {
                start: 0.4,
                end: 0.6,
                step: 0.1,
                stratified: false,
            },
            &config,
            &StopwordList::bundled_indonesian(),
            Weighting::CorpusNormalized,
            jobs,
        )
        .unwrap()
    }

    #[test]
    fn sweep_shape_and_ordering() {
        let report = small_sweep(1, &[Method::NaiveBayes, Method::DecisionTree]);
        assert_eq!(report.rows.len(), 3 * 2);
        let keys: Vec<(f64, &str)> = report
            .rows
            .iter()
            .map(|r| (r.train_fraction, r.method.tag()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
        assert_eq!(keys, sorted);
        for row in &report.rows {
            assert!((0.0..=1.0).contains(&row.accuracy));
            assert_eq!(row.confusion.accuracy(), row.accuracy);
        }
    }

    #[test]
    fn single_cell_sweep() {
        let corpus = Corpus::bundled_demo();
        let report = run_sweep(
            &corpus,
            &[Method::NaiveBayes],
            &SweepConfig {
                start: 0.5,
                end: 0.5,
                step: 0.05,
                stratified: false,
            },
            &TrainConfig::new(7),
            &StopwordList::bundled_indonesian(),
            Weighting::CorpusNormalized,
            1,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].confusion.total(), 100);
    }

    #[test]
    fn parallel_and_serial_agree() {
        let methods = [Method::NaiveBayes, Method::Knn, Method::DecisionTree];
        let serial = small_sweep(1, &methods);
        let parallel = small_sweep(4, &methods);
        let mut a = Vec::new();
        serial.write_csv(&mut a).unwrap();
        let mut b = Vec::new();
        parallel.write_csv(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_method_list_is_rejected() {
        let corpus = Corpus::bundled_demo();
        assert!(matches!(
            run_sweep(
                &corpus,
                &[],
                &SweepConfig::default_range(),
                &TrainConfig::new(0),
                &StopwordList::bundled_indonesian(),
                Weighting::Standard,
                1,
            ),
            Err(EvalError::NoMethods)
        ));
    }

    #[test]
    fn csv_shape_and_json_roundtrip() {
        let report = small_sweep(1, &[Method::NaiveBayes, Method::Knn]);
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "train_fraction,method,accuracy,tp,fp,tn,fn,seed");
        assert_eq!(lines.len(), 1 + report.rows.len());
        assert!(lines[1].starts_with("0.4000,knn,"));

        let mut json = Vec::new();
        report.write_json(&mut json).unwrap();
        let reloaded = SweepReport::from_json(&String::from_utf8(json).unwrap()).unwrap();
        // Wall-clock timing is never serialized, so it reloads as zero;
        // everything else survives the round trip exactly.
        let mut expected = report;
        for row in &mut expected.rows {
            row.elapsed_ms = 0;
        }
        assert_eq!(reloaded, expected);
    }

    #[test]
    fn svg_has_one_polyline_per_method() {
        let report = small_sweep(1, &[Method::NaiveBayes, Method::Knn, Method::Mlp]);
        let mut svg = Vec::new();
        report.write_svg_chart(&mut svg).unwrap();
        let text = String::from_utf8(svg).unwrap();
        assert_eq!(text.matches("<polyline").count(), 3);
        assert!(text.starts_with("<svg "));
        assert!(text.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn summaries_are_consistent() {
        let report = small_sweep(1, &[Method::NaiveBayes, Method::DecisionTree]);
        let means = report.mean_accuracy_by_method();
        assert_eq!(means.len(), 2);
        assert_eq!(means[0].0, Method::DecisionTree);
        let best = report.best_method_per_fraction();
        assert_eq!(best.len(), 3);
        for (fraction, method, acc) in best {
            assert_eq!(report.accuracy_at(fraction, method), Some(acc));
            for row in report.rows.iter().filter(|r| r.train_fraction == fraction) {
                assert!(row.accuracy <= acc);
            }
        }
    }
}
