//! Persist a trained model to JSON and prove the reload is exact.
//!
//! Run with: `cargo run --example save_and_load`

use sentimen::classifiers::{train, Method, TrainConfig, TrainedModel};
use sentimen::preprocess::StopwordList;
use sentimen::vectorize::Weighting;
use sentimen::Corpus;

fn main() {
    let corpus = Corpus::bundled_demo();
    let split = corpus.split(0.8, 7).unwrap();

    let model = train(
        Method::NaiveBayes,
        split.train.documents(),
        StopwordList::bundled_indonesian(),
        Weighting::CorpusNormalized,
        &TrainConfig::new(7),
    )
    .unwrap();

    // Models serialize to a versioned, self-contained JSON document:
    // stopwords + fitted TF-IDF + classifier parameters.
    let mut buf = Vec::new();
    model.save(&mut buf).unwrap();
    println!("serialized model: {} bytes of JSON", buf.len());
    let text = String::from_utf8(buf.clone()).unwrap();
    for line in text.lines().take(6) {
        println!("  {line}");
    }
    println!("  ...");

    let reloaded = TrainedModel::load(buf.as_slice()).unwrap();

    // Scores round-trip bit for bit, not just approximately.
    let mut max_diff = 0.0f64;
    let mut label_flips = 0;
    for doc in &split.test {
        let before = model.predict_text(&doc.text);
        let after = reloaded.predict_text(&doc.text);
        max_diff = max_diff.max((before.score - after.score).abs());
        label_flips += usize::from(before.label != after.label);
    }
    println!(
        "\n{} held-out docs: max score difference {max_diff:e}, label flips {label_flips}",
        split.test.len()
    );
    assert_eq!(model, reloaded);
    println!("reloaded model compares equal to the original");
}
