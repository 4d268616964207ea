//! Fit TF-IDF on a tiny corpus and print the per-term weight table.
//!
//! Shows the crate's corpus-normalized weighting, where term frequency is
//! normalized by total corpus occurrences and IDF uses that same corpus
//! count — so a term occurring more often than there are documents gets a
//! *negative* weight (see `rakyat` below).
//!
//! Run with: `cargo run --example tfidf_weights`

use sentimen::preprocess::TokenizedDocument;
use sentimen::vectorize::{fit, Weighting};

fn doc(id: &str, text: &str) -> TokenizedDocument {
    TokenizedDocument {
        id: id.to_string(),
        tokens: text.split_whitespace().map(str::to_string).collect(),
    }
}

fn main() {
    let docs = vec![
        doc("A", "jangan ancam rakyat rakyat indonesia pintar"),
        doc(
            "B",
            "rakyat tidak pernah gagal bernegara pemerintah yang gagal bernegara",
        ),
        doc("C", "suara rakyat dicuri bagaimana uang rakyat"),
    ];

    let model = fit(&docs, Weighting::CorpusNormalized).expect("non-empty corpus");
    let vocab = model.vocabulary();
    println!(
        "fitted {} on {} docs, vocabulary {} terms\n",
        model.variant().tag(),
        model.stats().doc_count(),
        vocab.len()
    );

    println!(
        "{:<12} {:>3} {:>3} {:>8} {:>8} {:>8}",
        "term", "df", "cf", "tf(A)", "idf", "w(A)"
    );
    for index in 0..vocab.len() {
        let term = vocab.term(index);
        let tf = model.tf(term, &docs[0]).unwrap();
        let idf = model.idf(term).unwrap();
        let weight = model.weight(term, &docs[0]).unwrap();
        println!(
            "{term:<12} {:>3} {:>3} {tf:>8.4} {idf:>8.4} {weight:>8.4}",
            model.stats().df(index),
            model.stats().cf(index),
        );
    }

    // Documents become sparse vectors; zero weights are dropped.
    let vector = model.transform(&docs[0]);
    println!(
        "\ndoc A as sparse vector ({} nonzero entries):",
        vector.entries().len()
    );
    for &(index, weight) in vector.entries() {
        println!("  {:<12} {weight:>8.4}", vocab.term(index));
    }

    // Cosine similarity over those vectors drives the KNN classifier.
    let b = model.transform(&docs[1]);
    let c = model.transform(&docs[2]);
    println!("\ncosine(A, B) = {:+.4}", vector.cosine(&b));
    println!("cosine(A, C) = {:+.4}", vector.cosine(&c));
}
