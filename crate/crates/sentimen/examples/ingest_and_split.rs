//! Load the bundled demo corpus and carve a seeded train/test split.
//!
//! Run with: `cargo run --example ingest_and_split`

use sentimen::{Corpus, Label};

fn main() {
    let corpus = Corpus::bundled_demo();
    let (positive, negative) = corpus.label_balance();
    println!(
        "corpus: {} documents ({positive} positive / {negative} negative)",
        corpus.len()
    );

    let first = &corpus.documents()[0];
    println!(
        "first doc: {} [{}] {:?}",
        first.id,
        first.label.tag(),
        first.text
    );

    // Splits are deterministic in (fraction, seed) and restore corpus order
    // inside each side, so a rerun reproduces them byte for byte.
    let split = corpus.split(0.75, 42).expect("valid fraction");
    println!(
        "\nsplit 0.75 @ seed 42: {} train / {} test",
        split.train.len(),
        split.test.len()
    );
    let test_pos = split
        .test
        .iter()
        .filter(|d| d.label == Label::Positive)
        .count();
    println!(
        "test-side balance: {test_pos} positive / {} negative",
        split.test.len() - test_pos
    );

    // Same seed, same split; different seed, (almost surely) different split.
    let again = corpus.split(0.75, 42).unwrap();
    let other = corpus.split(0.75, 43).unwrap();
    let ids = |c: &Corpus| c.iter().map(|d| d.id.clone()).collect::<Vec<_>>();
    println!(
        "\nseed 42 reproducible: {}",
        ids(&split.test) == ids(&again.test)
    );
    println!(
        "seed 43 differs:      {}",
        ids(&split.test) != ids(&other.test)
    );
}
