//! Walk a raw tweet through every preprocessing stage.
//!
//! Run with: `cargo run --example preprocess_stages`

use sentimen::preprocess::{
    case_fold, nfc_normalize, remove_punctuation, tokenize, Preprocessor, StopwordList,
};

fn main() {
    let tweet = "RT @tegarcs_: Kita tidak pernah gagal bernegara, Pemerintah yang gagal bernegara. #kpujangancurang";
    println!("raw:                 {tweet}\n");

    // The pipeline is staged so each intermediate form is inspectable:
    // punctuation removal -> case folding -> tokenization -> stopword filter.
    let normalized = nfc_normalize(tweet);
    let no_punct = remove_punctuation(&normalized);
    println!(
        "punctuation removed: {}",
        no_punct.split_whitespace().collect::<Vec<_>>().join(" ")
    );

    let folded = case_fold(&no_punct);
    println!(
        "case folded:         {}",
        folded.split_whitespace().collect::<Vec<_>>().join(" ")
    );

    let tokens = tokenize(&folded);
    println!("tokens:              {tokens:?}");

    let stopwords = StopwordList::bundled_indonesian();
    println!("\nbundled stopword list: {} words", stopwords.len());

    // Preprocessor::run_text chains all four stages.
    let preprocessor = Preprocessor::new(stopwords).expect("non-empty stopword list");
    let filtered = preprocessor.run_text(tweet);
    println!("after stopword filter: {filtered:?}");

    let dropped: Vec<&String> = tokens.iter().filter(|t| !filtered.contains(t)).collect();
    println!("dropped as stopwords:  {dropped:?}");
}
