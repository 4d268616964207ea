//! Train each classifier on the demo corpus and classify unseen tweets.
//!
//! Run with: `cargo run --example train_and_predict`

use sentimen::classifiers::{train, Method, TrainConfig};
use sentimen::preprocess::StopwordList;
use sentimen::vectorize::Weighting;
use sentimen::Corpus;

fn main() {
    let corpus = Corpus::bundled_demo();
    let unseen = [
        "hasil rekapitulasi janggal, rakyat kecewa dan marah #kpujangancurang",
        "alhamdulillah pemilu berjalan lancar dan damai, salut buat petugas tps",
        "kpu harus transparan, jangan sampai suara rakyat hilang",
    ];

    // One TrainConfig drives every method; unused hyperparameters are
    // simply ignored by the others. MLP learns slowly at the conservative
    // defaults, so this example raises its learning rate and epochs.
    let config = TrainConfig {
        mlp_learning_rate: 0.5,
        mlp_epochs: 1000,
        ..TrainConfig::new(42)
    };

    for method in Method::ALL {
        let model = train(
            method,
            corpus.documents(),
            StopwordList::bundled_indonesian(),
            Weighting::CorpusNormalized,
            &config,
        )
        .expect("training on the bundled corpus succeeds");

        println!("{}:", method.tag());
        for text in &unseen {
            // predict_text runs preprocessing + TF-IDF + the classifier;
            // score is the Positive-class strength in [0, 1].
            let p = model.predict_text(text);
            println!(
                "  [{} {:.3}] {}",
                p.label.tag(),
                p.score,
                &text[..40.min(text.len())]
            );
        }
        println!();
    }
}
