//! Four trainable binary sentiment classifiers behind one train/predict
//! interface: multinomial naive Bayes, k-nearest-neighbors, a Gini decision
//! tree, and a single-hidden-layer perceptron.
//!
//! [`train`] runs the full pipeline on labeled raw documents — preprocess,
//! fit TF-IDF on the training set only, train the chosen method — and
//! returns a self-contained [`TrainedModel`] that carries its stopword list
//! and fitted [`TfIdfModel`], so [`TrainedModel::predict_text`] accepts raw
//! text. Prediction never mutates a model; identical `(model, input)` pairs
//! yield identical [`Prediction`]s.
//!
//! All randomness (MLP weight initialization, and nothing else) flows from
//! `TrainConfig::seed` through ChaCha8 (`rand_chacha`), pinned so results
//! reproduce across platforms. Training is single-threaded per model;
//! distinct models may be trained concurrently.

mod decision_tree;
mod knn;
mod mlp;
mod naive_bayes;

pub use decision_tree::DtModel;
pub use knn::KnnModel;
pub use mlp::{gradient_check, MlpModel};
pub use naive_bayes::NbModel;

use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Label, LabeledDocument};
use crate::preprocess::{PreprocessError, Preprocessor, StopwordList, TokenizedDocument};
use crate::vectorize::{self, TfIdfModel, VectorizeError, Weighting};

/// Classifier selector. Tags (`Method::tag`) are the canonical names used in
/// CLI arguments, report rows, and serialized models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    NaiveBayes,
    Knn,
    DecisionTree,
    Mlp,
}

impl Method {
    /// All methods, in canonical declaration order.
    pub const ALL: [Method; 4] = [
        Method::NaiveBayes,
        Method::Knn,
        Method::DecisionTree,
        Method::Mlp,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::NaiveBayes => "naive_bayes",
            Method::Knn => "knn",
            Method::DecisionTree => "decision_tree",
            Method::Mlp => "mlp",
        }
    }
}

impl FromStr for Method {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "naive_bayes" | "nb" => Ok(Method::NaiveBayes),
            "knn" | "k_nearest_neighbor" | "k_nearest_neighbors" => Ok(Method::Knn),
            "decision_tree" | "dt" => Ok(Method::DecisionTree),
            "mlp" | "multi_layer_perceptron" => Ok(Method::Mlp),
            other => Err(ClassifierError::UnknownMethod(other.to_string())),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Hyperparameters for all four methods plus the run seed.
///
/// Construct with [`TrainConfig::new`] (sensible defaults) and adjust fields;
/// every training entry point revalidates, so hand-built configs cannot
/// bypass the positivity constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Seed for every stochastic step (currently MLP weight initialization).
    pub seed: u64,
    /// Neighbors consulted by KNN.
    pub knn_k: usize,
    /// Maximum split depth for the decision tree (`None` = unlimited).
    pub dt_max_depth: Option<usize>,
    /// Minimum documents on each side of a decision-tree split.
    pub dt_min_leaf: usize,
    /// Hidden-layer width of the MLP.
    pub mlp_hidden: usize,
    /// Full-batch gradient-descent step size.
    pub mlp_learning_rate: f64,
    /// Training epochs for the MLP.
    pub mlp_epochs: usize,
    /// Laplace smoothing for naive Bayes (0 disables smoothing).
    pub nb_alpha: f64,
}

impl TrainConfig {
    pub fn new(seed: u64) -> Self {
        TrainConfig {
            seed,
            knn_k: 5,
            dt_max_depth: None,
            dt_min_leaf: 1,
            mlp_hidden: 16,
            mlp_learning_rate: 0.05,
            mlp_epochs: 200,
            nb_alpha: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), ClassifierError> {
        let fail = |msg: &str| Err(ClassifierError::InvalidConfig(msg.to_string()));
        if self.knn_k == 0 {
            return fail("knn_k must be >= 1");
        }
        if self.dt_min_leaf == 0 {
            return fail("dt_min_leaf must be >= 1");
        }
        if self.mlp_hidden == 0 {
            return fail("mlp_hidden must be >= 1");
        }
        if !(self.mlp_learning_rate > 0.0 && self.mlp_learning_rate.is_finite()) {
            return fail("mlp_learning_rate must be a positive finite number");
        }
        if self.mlp_epochs == 0 {
            return fail("mlp_epochs must be >= 1");
        }
        if !(self.nb_alpha >= 0.0 && self.nb_alpha.is_finite()) {
            return fail("nb_alpha must be a non-negative finite number");
        }
        Ok(())
    }
}

/// A classification outcome: the predicted label and a confidence score for
/// the Positive class.
///
/// For the scoring models (naive Bayes posterior, MLP output) the label is
/// Positive exactly when `score >= 0.5`. The vote-based models follow their
/// documented tie-breaks at exactly 0.5: KNN defers to the single nearest
/// neighbor, the decision tree defers to Negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: Label,
    pub score: f64,
}

/// Errors from configuration, training, and model I/O.
#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("unknown method {0:?} (expected naive_bayes, knn, decision_tree, or mlp)")]
    UnknownMethod(String),
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
    #[error("training set is missing the {0} class")]
    MissingClass(Label),
    #[error("knn_k = {k} exceeds the {n} available training documents")]
    KTooLarge { k: usize, n: usize },
    #[error("mlp training loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },
    #[error("empty training set")]
    EmptyTrainingSet,
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error(transparent)]
    Vectorize(#[from] VectorizeError),
    #[error("model i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file is not valid: {0}")]
    MalformedModel(String),
}

/// Method-specific trained parameters. The serialized form is tagged by the
/// method name under `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierModel {
    NaiveBayes(NbModel),
    Knn(KnnModel),
    DecisionTree(DtModel),
    Mlp(MlpModel),
}

impl ClassifierModel {
    pub fn method(&self) -> Method {
        match self {
            ClassifierModel::NaiveBayes(_) => Method::NaiveBayes,
            ClassifierModel::Knn(_) => Method::Knn,
            ClassifierModel::DecisionTree(_) => Method::DecisionTree,
            ClassifierModel::Mlp(_) => Method::Mlp,
        }
    }
}

/// A trained classifier bundled with everything needed to score raw text:
/// the stopword list and the TF-IDF model fitted on its training split.
/// Immutable after training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    stopwords: StopwordList,
    tfidf: TfIdfModel,
    classifier: ClassifierModel,
}

/// Bump when the serialized layout changes incompatibly.
const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    model: TrainedModel,
}

/// Train `method` on labeled raw documents.
///
/// Preprocessing and TF-IDF fitting see only `docs`, so evaluating on a
/// held-out set never leaks test vocabulary into the model.
pub fn train(
    method: Method,
    docs: &[LabeledDocument],
    stopwords: StopwordList,
    weighting: Weighting,
    config: &TrainConfig,
) -> Result<TrainedModel, ClassifierError> {
    config.validate()?;
    if docs.is_empty() {
        return Err(ClassifierError::EmptyTrainingSet);
    }
    let preprocessor = Preprocessor::new(stopwords.clone())?;
    let tokenized: Vec<TokenizedDocument> = docs.iter().map(|d| preprocessor.run(d)).collect();
    let labels: Vec<Label> = docs.iter().map(|d| d.label).collect();
    let tfidf = vectorize::fit(&tokenized, weighting)?;
    let vocab_size = tfidf.vocabulary().len();

    let classifier = match method {
        Method::NaiveBayes => {
            let counts: Vec<Vec<(usize, usize)>> =
                tokenized.iter().map(|d| tfidf.term_counts(d)).collect();
            ClassifierModel::NaiveBayes(NbModel::fit(
                &counts,
                &labels,
                vocab_size,
                config.nb_alpha,
            )?)
        }
        Method::Knn => {
            let vectors = tokenized.iter().map(|d| tfidf.transform(d)).collect();
            ClassifierModel::Knn(KnnModel::fit(vectors, labels.clone(), config.knn_k)?)
        }
        Method::DecisionTree => {
            let vectors: Vec<_> = tokenized.iter().map(|d| tfidf.transform(d)).collect();
            ClassifierModel::DecisionTree(DtModel::fit(
                &vectors,
                &labels,
                vocab_size,
                config.dt_max_depth,
                config.dt_min_leaf,
            )?)
        }
        Method::Mlp => {
            let vectors: Vec<_> = tokenized.iter().map(|d| tfidf.transform(d)).collect();
            ClassifierModel::Mlp(MlpModel::fit(
                &vectors,
                &labels,
                vocab_size,
                config.mlp_hidden,
                config.mlp_learning_rate,
                config.mlp_epochs,
                config.seed,
            )?)
        }
    };

    Ok(TrainedModel {
        stopwords,
        tfidf,
        classifier,
    })
}

impl TrainedModel {
    pub fn method(&self) -> Method {
        self.classifier.method()
    }

    pub fn tfidf(&self) -> &TfIdfModel {
        &self.tfidf
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stopwords
    }

    pub fn classifier(&self) -> &ClassifierModel {
        &self.classifier
    }

    /// Classify an already-preprocessed document.
    pub fn predict_tokens(&self, doc: &TokenizedDocument) -> Prediction {
        match &self.classifier {
            ClassifierModel::NaiveBayes(nb) => nb.predict(&self.tfidf.term_counts(doc)),
            ClassifierModel::Knn(knn) => knn.predict(&self.tfidf.transform(doc)),
            ClassifierModel::DecisionTree(dt) => dt.predict(&self.tfidf.transform(doc)),
            ClassifierModel::Mlp(mlp) => mlp.predict(&self.tfidf.transform(doc)),
        }
    }

    /// Classify raw text: preprocess with the model's stopword list, vectorize
    /// with its fitted TF-IDF model, then score. Out-of-vocabulary tokens are
    /// ignored.
    pub fn predict_text(&self, text: &str) -> Prediction {
        let preprocessor = Preprocessor::new(self.stopwords.clone())
            .expect("a trained model always carries a non-empty stopword list");
        let doc = TokenizedDocument {
            id: String::new(),
            tokens: preprocessor.run_text(text),
        };
        self.predict_tokens(&doc)
    }

    /// Serialize as versioned JSON.
    pub fn save(&self, mut writer: impl Write) -> Result<(), ClassifierError> {
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            model: self.clone(),
        };
        let json = serde_json::to_string_pretty(&file)
            .map_err(|e| ClassifierError::MalformedModel(e.to_string()))?;
        writer.write_all(json.as_bytes())?;
        writer.write_all(b"\n")?;
        Ok(())
    }

    /// Load a model saved by [`TrainedModel::save`]. Rejects unknown format
    /// versions and structurally invalid files.
    pub fn load(mut reader: impl Read) -> Result<TrainedModel, ClassifierError> {
        let mut raw = String::new();
        reader.read_to_string(&mut raw)?;
        let file: ModelFile = serde_json::from_str(&raw)
            .map_err(|e| ClassifierError::MalformedModel(e.to_string()))?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(ClassifierError::MalformedModel(format!(
                "unsupported format_version {} (this build reads {})",
                file.format_version, MODEL_FORMAT_VERSION
            )));
        }
        Ok(file.model)
    }
}

/// Count labels as `(negative, positive)`.
pub(crate) fn label_counts(labels: &[Label]) -> (usize, usize) {
    let pos = labels.iter().filter(|l| **l == Label::Positive).count();
    (labels.len() - pos, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn doc(id: &str, text: &str, label: Label) -> LabeledDocument {
        LabeledDocument {
            id: id.to_string(),
            text: text.to_string(),
            label,
        }
    }

    fn tiny_training_set() -> Vec<LabeledDocument> {
        vec![
            doc("p1", "pemilu bagus dan lancar sekali", Label::Positive),
            doc("p2", "hasil bagus, warga senang dan aman!", Label::Positive),
            doc("p3", "lancar aman dan jujur prosesnya", Label::Positive),
            doc("n1", "kpu curang, hasil kacau parah", Label::Negative),
            doc("n2", "curang dan bohong bikin resah", Label::Negative),
            doc("n3", "parah, suara kacau dan resah semua", Label::Negative),
        ]
    }

    fn stopwords() -> StopwordList {
        StopwordList::from_words(["dan", "sekali", "semua"]).unwrap()
    }

    #[test]
    fn method_parsing_and_tags() {
        assert_eq!("naive_bayes".parse::<Method>().unwrap(), Method::NaiveBayes);
        assert_eq!("NB".parse::<Method>().unwrap(), Method::NaiveBayes);
        assert_eq!(
            "k-nearest-neighbors".parse::<Method>().unwrap(),
            Method::Knn
        );
        assert_eq!("DT".parse::<Method>().unwrap(), Method::DecisionTree);
        assert_eq!(
            "multi_layer_perceptron".parse::<Method>().unwrap(),
            Method::Mlp
        );
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!(matches!(
            "svm".parse::<Method>(),
            Err(ClassifierError::UnknownMethod(_))
        ));
    }

    #[test]
    fn config_validation() {
        let base = TrainConfig::new(7);
        assert!(base.validate().is_ok());
        for broken in [
            TrainConfig {
                knn_k: 0,
                ..base.clone()
            },
            TrainConfig {
                dt_min_leaf: 0,
                ..base.clone()
            },
            TrainConfig {
                mlp_hidden: 0,
                ..base.clone()
            },
            TrainConfig {
                mlp_learning_rate: 0.0,
                ..base.clone()
            },
            TrainConfig {
                mlp_learning_rate: f64::NAN,
                ..base.clone()
            },
            TrainConfig {
                mlp_epochs: 0,
                ..base.clone()
            },
            TrainConfig {
                nb_alpha: -0.5,
                ..base.clone()
            },
        ] {
            assert!(matches!(
                broken.validate(),
                Err(ClassifierError::InvalidConfig(_))
            ));
        }
    }

    #[test]
    fn train_and_predict_all_methods() {
        let docs = tiny_training_set();
        let config = TrainConfig {
            mlp_epochs: 300,
            ..TrainConfig::new(42)
        };
        for method in Method::ALL {
            let model = train(
                method,
                &docs,
                stopwords(),
                Weighting::CorpusNormalized,
                &TrainConfig {
                    knn_k: 3,
                    ..config.clone()
                },
            )
            .unwrap();
            assert_eq!(model.method(), method);
            let pos = model.predict_text("proses lancar dan bagus, senang!");
            let neg = model.predict_text("curang parah, kacau dan resah");
            assert_eq!(pos.label, Label::Positive, "{method}");
            assert_eq!(neg.label, Label::Negative, "{method}");
            assert!((0.0..=1.0).contains(&pos.score));
            assert!((0.0..=1.0).contains(&neg.score));
        }
    }

    #[test]
    fn predict_is_pure() {
        let docs = tiny_training_set();
        let model = train(
            Method::NaiveBayes,
            &docs,
            stopwords(),
            Weighting::Standard,
            &TrainConfig::new(1),
        )
        .unwrap();
        let text = "kpu bagus tapi hasil kacau";
        let first = model.predict_text(text);
        for _ in 0..5 {
            assert_eq!(model.predict_text(text), first);
        }
    }

    #[test]
    fn oov_only_text_still_classifies() {
        let docs = tiny_training_set();
        let model = train(
            Method::Knn,
            &docs,
            stopwords(),
            Weighting::CorpusNormalized,
            &TrainConfig {
                knn_k: 3,
                ..TrainConfig::new(5)
            },
        )
        .unwrap();
        let p = model.predict_text("zzz qqq www");
        assert!(matches!(p.label, Label::Positive | Label::Negative));
    }

    #[test]
    fn smoothed_nb_argmax_survives_corpus_duplication() {
        // With alpha = 1 the smoothed likelihoods do shift when every
        // training document is duplicated (smoothing weight halves), but on
        // the bundled corpus the decision itself must not flip for any of
        // its 200 documents.
        let corpus = Corpus::bundled_demo();
        let preprocessor = Preprocessor::new(StopwordList::bundled_indonesian()).unwrap();
        let tokenized: Vec<TokenizedDocument> = corpus
            .documents()
            .iter()
            .map(|d| preprocessor.run(d))
            .collect();
        let tfidf = vectorize::fit(&tokenized, Weighting::CorpusNormalized).unwrap();
        let counts: Vec<Vec<(usize, usize)>> =
            tokenized.iter().map(|d| tfidf.term_counts(d)).collect();
        let labels: Vec<Label> = corpus.documents().iter().map(|d| d.label).collect();

        let single = NbModel::fit(&counts, &labels, tfidf.vocabulary().len(), 1.0).unwrap();
        let doubled_counts: Vec<Vec<(usize, usize)>> =
            counts.iter().chain(counts.iter()).cloned().collect();
        let doubled_labels: Vec<Label> = labels.iter().chain(labels.iter()).copied().collect();
        let doubled = NbModel::fit(
            &doubled_counts,
            &doubled_labels,
            tfidf.vocabulary().len(),
            1.0,
        )
        .unwrap();

        for (doc, c) in tokenized.iter().zip(&counts) {
            assert_eq!(
                single.predict(c).label,
                doubled.predict(c).label,
                "argmax flipped under duplication for {}",
                doc.id
            );
        }
    }

    #[test]
    fn vocabulary_comes_only_from_training_documents() {
        // Training must never see held-out text: the fitted vocabulary is a
        // subset of the training-side tokens, and a marker token that occurs
        // only in held-out documents stays out of the vocabulary.
        let corpus = Corpus::bundled_demo();
        let split = corpus.split(0.6, 11).unwrap();
        let marker = "tokenhanyauji";
        let mut test_docs = split.test.documents().to_vec();
        test_docs[0].text.push(' ');
        test_docs[0].text.push_str(marker);

        let model = train(
            Method::NaiveBayes,
            split.train.documents(),
            StopwordList::bundled_indonesian(),
            Weighting::CorpusNormalized,
            &TrainConfig::new(11),
        )
        .unwrap();

        let preprocessor = Preprocessor::new(model.stopwords().clone()).unwrap();
        let mut train_tokens: std::collections::HashSet<String> = std::collections::HashSet::new();
        for doc in split.train.documents() {
            train_tokens.extend(preprocessor.run(doc).tokens);
        }
        let vocab = model.tfidf().vocabulary();
        for term in vocab.terms() {
            assert!(
                train_tokens.contains(term),
                "{term} not in any training doc"
            );
        }
        assert!(vocab.index_of(marker).is_none());

        // The marked held-out doc still classifies; the marker is just OOV.
        let p = model.predict_text(&test_docs[0].text);
        assert!(p.score.is_finite());
    }

    #[test]
    fn save_load_roundtrip_preserves_predictions() {
        let corpus = Corpus::bundled_demo();
        let (train_docs, test_docs) = {
            let split = corpus.split(0.5, 99).unwrap();
            (split.train, split.test)
        };
        for method in Method::ALL {
            let config = TrainConfig {
                mlp_epochs: 50,
                ..TrainConfig::new(17)
            };
            let model = train(
                method,
                train_docs.documents(),
                StopwordList::bundled_indonesian(),
                Weighting::CorpusNormalized,
                &config,
            )
            .unwrap();
            let mut buf = Vec::new();
            model.save(&mut buf).unwrap();
            let reloaded = TrainedModel::load(buf.as_slice()).unwrap();
            assert_eq!(model, reloaded);
            for d in &test_docs {
                let a = model.predict_text(&d.text);
                let b = reloaded.predict_text(&d.text);
                assert_eq!(a.label, b.label, "{method}");
                assert_eq!(a.score.to_bits(), b.score.to_bits(), "{method}");
            }
        }
    }

    #[test]
    fn load_rejects_bad_version_and_garbage() {
        let docs = tiny_training_set();
        let model = train(
            Method::NaiveBayes,
            &docs,
            stopwords(),
            Weighting::Standard,
            &TrainConfig::new(1),
        )
        .unwrap();
        let mut buf = Vec::new();
        model.save(&mut buf).unwrap();
        let tampered = String::from_utf8(buf)
            .unwrap()
            .replace("\"format_version\": 1", "\"format_version\": 999");
        assert!(matches!(
            TrainedModel::load(tampered.as_bytes()),
            Err(ClassifierError::MalformedModel(_))
        ));
        assert!(matches!(
            TrainedModel::load(&b"not json"[..]),
            Err(ClassifierError::MalformedModel(_))
        ));
    }

    #[test]
    fn empty_training_set_is_rejected() {
        assert!(matches!(
            train(
                Method::NaiveBayes,
                &[],
                stopwords(),
                Weighting::Standard,
                &TrainConfig::new(0),
            ),
            Err(ClassifierError::EmptyTrainingSet)
        ));
    }
}
