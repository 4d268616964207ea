//! Compare all four classifiers across train-fraction splits and render
//! the accuracy chart.
//!
//! Reproduces the crate's headline experiment: train fractions 0.25 to
//! 0.75 in steps of 0.05 (11 splits x 4 methods = 44 cells), then emit
//! CSV, JSON, and an SVG line chart. Reruns with the same seed are
//! byte-identical.
//!
//! Run with: `cargo run --example sweep_chart`

use std::fs;

use sentimen::classifiers::{Method, TrainConfig};
use sentimen::eval::{run_sweep, SweepConfig};
use sentimen::preprocess::StopwordList;
use sentimen::vectorize::Weighting;
use sentimen::Corpus;

fn main() {
    let corpus = Corpus::bundled_demo();
    let config = TrainConfig {
        mlp_learning_rate: 0.5,
        mlp_epochs: 1000,
        ..TrainConfig::new(42)
    };

    let report = run_sweep(
        &corpus,
        &Method::ALL,
        &SweepConfig::default_range(), // 0.25..=0.75 step 0.05
        &config,
        &StopwordList::bundled_indonesian(),
        Weighting::CorpusNormalized,
        0, // parallel across all cores; results identical to serial
    )
    .expect("sweep on the bundled corpus succeeds");

    println!(
        "{} rows, corpus {}\n",
        report.rows.len(),
        &report.corpus_fingerprint[..12]
    );

    println!("accuracy by train fraction:");
    println!(
        "{:<10} {:>13} {:>8} {:>13} {:>8}",
        "fraction", "decision_tree", "knn", "mlp", "nb"
    );
    for fraction in (0..11).map(|i| 0.25 + 0.05 * i as f64) {
        let cell = |m: Method| report.accuracy_at(fraction, m).unwrap();
        println!(
            "{fraction:<10.2} {:>13.4} {:>8.4} {:>13.4} {:>8.4}",
            cell(Method::DecisionTree),
            cell(Method::Knn),
            cell(Method::Mlp),
            cell(Method::NaiveBayes),
        );
    }

    println!("\nmean accuracy over the sweep:");
    for (method, mean) in report.mean_accuracy_by_method() {
        println!("  {:<14} {mean:.4}", method.tag());
    }

    let dir = std::env::temp_dir().join("sentimen_sweep");
    fs::create_dir_all(&dir).unwrap();
    let emit = |name: &str, buf: Vec<u8>| {
        let path = dir.join(name);
        fs::write(&path, buf).unwrap();
        println!("wrote {}", path.display());
    };
    let mut csv = Vec::new();
    report.write_csv(&mut csv).unwrap();
    emit("sweep.csv", csv);
    let mut json = Vec::new();
    report.write_json(&mut json).unwrap();
    emit("sweep.json", json);
    let mut svg = Vec::new();
    report.write_svg_chart(&mut svg).unwrap();
    emit("sweep.svg", svg);
}
