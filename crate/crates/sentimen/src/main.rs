//! Thin command-line front end over the `sentimen` library.
//!
//! Subcommands: `ingest`, `preprocess`, `train`, `predict`, `evaluate`,
//! `sweep`, `report`. Every run is deterministic given its config: seeds are
//! mandatory, there is no wall-clock fallback.
//!
//! Exit codes are a stable contract: 0 success, 2 input/config error,
//! 3 model I/O error, 4 runtime failure.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sentimen::classifiers::{self, Method, TrainedModel};
use sentimen::config::{parse_methods, RunConfig, CONFIG_ENV_VAR};
use sentimen::corpus::{self, Corpus, CorpusFormat};
use sentimen::eval::{
    self, threshold_check, SweepReport, ThresholdOutcome, DEFAULT_ACCURACY_THRESHOLD,
};
use sentimen::preprocess::{
    case_fold, nfc_normalize, remove_punctuation, tokenize, Preprocessor, StopwordList,
};
use sentimen::vectorize::Weighting;

const EXIT_INPUT: u8 = 2;
const EXIT_MODEL_IO: u8 = 3;
const EXIT_RUNTIME: u8 = 4;

/// An error already mapped to its exit code.
struct CliError {
    code: u8,
    message: String,
}

type CliResult = Result<(), CliError>;

fn fail(code: u8, error: impl std::fmt::Display) -> CliError {
    CliError {
        code,
        message: error.to_string(),
    }
}

#[derive(Parser)]
#[command(
    name = "sentimen",
    about = "Sentiment-analysis workbench: preprocessing, TF-IDF, four classifiers, split sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Input/pipeline settings shared by the training-style subcommands. Every
/// flag overrides the corresponding config-file key.
#[derive(Args)]
struct PipelineArgs {
    /// Config file (default: $SENTIMEN_CONFIG if set).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus file (default: the bundled 200-tweet demo corpus).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Corpus format: csv | jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Stopword file (default: the bundled Indonesian list).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// TF-IDF variant: corpus-normalized | standard.
    #[arg(long)]
    weighting: Option<String>,
    /// Seed for splits and weight initialization (mandatory somewhere:
    /// flag or config).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    knn_k: Option<usize>,
    #[arg(long)]
    dt_max_depth: Option<usize>,
    #[arg(long)]
    dt_min_leaf: Option<usize>,
    #[arg(long)]
    mlp_hidden: Option<usize>,
    #[arg(long)]
    mlp_learning_rate: Option<f64>,
    #[arg(long)]
    mlp_epochs: Option<usize>,
    #[arg(long)]
    nb_alpha: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a corpus; print its summary.
    Ingest {
        /// Corpus file (default: the bundled demo corpus).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Corpus format: csv | jsonl.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run the preprocessing pipeline and print the resulting tokens.
    Preprocess {
        /// A single text to preprocess.
        #[arg(long, conflicts_with = "corpus")]
        text: Option<String>,
        /// Preprocess every document of a corpus instead.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Stopword file (default: the bundled Indonesian list).
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// With --text: print each intermediate stage.
        #[arg(long)]
        show_stages: bool,
    },
    /// Train one classifier on a whole corpus and save the model.
    Train {
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Classifier: naive_bayes | knn | decision_tree | mlp.
        #[arg(long)]
        method: String,
        /// Where to write the model JSON.
        #[arg(long, default_value = "model.json")]
        output: PathBuf,
    },
    /// Classify texts with a saved model.
    Predict {
        /// Model JSON written by `train`.
        #[arg(long)]
        model: PathBuf,
        /// A single text to classify.
        #[arg(long)]
        text: Option<String>,
        /// File of inputs, one per line (`id<TAB>text` or bare text);
        /// `-` reads standard input.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Train on a seeded split and report test accuracy.
    Evaluate {
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Classifier to evaluate (default: naive_bayes).
        #[arg(long, default_value = "naive_bayes")]
        method: String,
        /// Training fraction of the split.
        #[arg(long, default_value_t = 0.75)]
        train_fraction: f64,
        /// Advisory accuracy threshold.
        #[arg(long, default_value_t = DEFAULT_ACCURACY_THRESHOLD)]
        threshold: f64,
    },
    /// Run the train-fraction sweep and write CSV/JSON/SVG reports.
    Sweep {
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Methods to compare (comma-separated, or `all`).
        #[arg(long)]
        methods: Option<String>,
        /// Directory for sweep.csv / sweep.json / sweep.svg.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Worker threads (1 = serial, 0 = all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Re-emit a saved sweep report in another format.
    Report {
        /// sweep.json produced by `sweep`.
        #[arg(long)]
        input: PathBuf,
        /// Output format: summary | csv | svg | json.
        #[arg(long, default_value = "summary")]
        format: String,
        /// Output file (default: standard output).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`sentimen report | head`) like other
    // unix filters instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest { corpus, format } => cmd_ingest(corpus, &format),
        Command::Preprocess {
            text,
            corpus,
            format,
            stopwords,
            show_stages,
        } => cmd_preprocess(text, corpus, &format, stopwords, show_stages),
        Command::Train {
            pipeline,
            method,
            output,
        } => cmd_train(&pipeline, &method, &output),
        Command::Predict { model, text, input } => cmd_predict(&model, text, input),
        Command::Evaluate {
            pipeline,
            method,
            train_fraction,
            threshold,
        } => cmd_evaluate(&pipeline, &method, train_fraction, threshold),
        Command::Sweep {
            pipeline,
            methods,
            output_dir,
            jobs,
        } => cmd_sweep(&pipeline, methods, output_dir, jobs),
        Command::Report {
            input,
            format,
            output,
        } => cmd_report(&input, &format, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Assemble the effective RunConfig: config file (flag, then env var, then
/// defaults) overridden by any explicit flags.
fn effective_config(args: &PipelineArgs) -> Result<RunConfig, CliError> {
    let config_path = args
        .config
        .clone()
        .or_else(|| std::env::var(CONFIG_ENV_VAR).ok().map(PathBuf::from));
    let mut config = match config_path {
        Some(path) => RunConfig::from_file(&path).map_err(|e| fail(EXIT_INPUT, e))?,
        None => RunConfig::default(),
    };
    if let Some(corpus) = &args.corpus {
        config.corpus = Some(corpus.clone());
    }
    if let Some(format) = &args.format {
        config.format = CorpusFormat::parse(format).map_err(|e| fail(EXIT_INPUT, e))?;
    }
    if let Some(stopwords) = &args.stopwords {
        config.stopwords = Some(stopwords.clone());
    }
    if let Some(weighting) = &args.weighting {
        config.weighting = Weighting::parse(weighting).map_err(|e| fail(EXIT_INPUT, e))?;
    }
    if let Some(seed) = args.seed {
        config.seed = Some(seed);
    }
    if let Some(v) = args.knn_k {
        config.knn_k = v;
    }
    if let Some(v) = args.dt_max_depth {
        config.dt_max_depth = Some(v);
    }
    if let Some(v) = args.dt_min_leaf {
        config.dt_min_leaf = v;
    }
    if let Some(v) = args.mlp_hidden {
        config.mlp_hidden = v;
    }
    if let Some(v) = args.mlp_learning_rate {
        config.mlp_learning_rate = v;
    }
    if let Some(v) = args.mlp_epochs {
        config.mlp_epochs = v;
    }
    if let Some(v) = args.nb_alpha {
        config.nb_alpha = v;
    }
    config.validate_files().map_err(|e| fail(EXIT_INPUT, e))?;
    Ok(config)
}

fn load_corpus_or_demo(path: Option<&Path>, format: CorpusFormat) -> Result<Corpus, CliError> {
    match path {
        Some(path) => corpus::load_corpus(path, format).map_err(|e| fail(EXIT_INPUT, e)),
        None => Ok(Corpus::bundled_demo()),
    }
}

fn load_stopwords(path: Option<&Path>) -> Result<StopwordList, CliError> {
    match path {
        Some(path) => StopwordList::load(path).map_err(|e| fail(EXIT_INPUT, e)),
        None => Ok(StopwordList::bundled_indonesian()),
    }
}

fn cmd_ingest(corpus_path: Option<PathBuf>, format: &str) -> CliResult {
    let format = CorpusFormat::parse(format).map_err(|e| fail(EXIT_INPUT, e))?;
    let corpus = load_corpus_or_demo(corpus_path.as_deref(), format)?;
    let (positive, negative) = corpus.label_balance();
    println!(
        "{} documents ({} positive / {} negative)",
        corpus.len(),
        positive,
        negative
    );
    println!("ids unique, texts non-empty");
    Ok(())
}

fn cmd_preprocess(
    text: Option<String>,
    corpus_path: Option<PathBuf>,
    format: &str,
    stopwords: Option<PathBuf>,
    show_stages: bool,
) -> CliResult {
    let stopwords = load_stopwords(stopwords.as_deref())?;
    let preprocessor = Preprocessor::new(stopwords).map_err(|e| fail(EXIT_INPUT, e))?;
    match (text, corpus_path) {
        (Some(text), None) => {
            if show_stages {
                let normalized = nfc_normalize(&text);
                let stage1 = remove_punctuation(&normalized);
                let stage2 = case_fold(&stage1);
                let stage3 = tokenize(&stage2);
                println!("input:              {text}");
                println!(
                    "punctuation removed: {}",
                    stage1.split_whitespace().collect::<Vec<_>>().join(" ")
                );
                println!(
                    "case folded:         {}",
                    stage2.split_whitespace().collect::<Vec<_>>().join(" ")
                );
                println!("tokenized:           {}", stage3.join(" "));
                println!(
                    "stopwords filtered:  {}",
                    preprocessor.run_text(&text).join(" ")
                );
            } else {
                println!("{}", preprocessor.run_text(&text).join(" "));
            }
            Ok(())
        }
        (None, Some(path)) => {
            let format = CorpusFormat::parse(format).map_err(|e| fail(EXIT_INPUT, e))?;
            let corpus = corpus::load_corpus(&path, format).map_err(|e| fail(EXIT_INPUT, e))?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for doc in &corpus {
                let tokens = preprocessor.run(doc);
                writeln!(out, "{}\t{}", doc.id, tokens.tokens.join(" "))
                    .map_err(|e| fail(EXIT_RUNTIME, e))?;
            }
            Ok(())
        }
        _ => Err(fail(EXIT_INPUT, "pass exactly one of --text or --corpus")),
    }
}

fn cmd_train(pipeline: &PipelineArgs, method: &str, output: &Path) -> CliResult {
    let config = effective_config(pipeline)?;
    let method: Method = method.parse().map_err(|e| fail(EXIT_INPUT, e))?;
    let train_config = config.train_config().map_err(|e| fail(EXIT_INPUT, e))?;
    let corpus = load_corpus_or_demo(config.corpus.as_deref(), config.format)?;
    let stopwords = load_stopwords(config.stopwords.as_deref())?;
    let model = classifiers::train(
        method,
        corpus.documents(),
        stopwords,
        config.weighting,
        &train_config,
    )
    .map_err(|e| fail(EXIT_INPUT, e))?;
    let file = fs::File::create(output).map_err(|e| fail(EXIT_MODEL_IO, e))?;
    model.save(file).map_err(|e| fail(EXIT_MODEL_IO, e))?;
    println!(
        "trained {} on {} documents (vocabulary {}) -> {}",
        method.tag(),
        corpus.len(),
        model.tfidf().vocabulary().len(),
        output.display()
    );
    Ok(())
}

fn cmd_predict(model_path: &Path, text: Option<String>, input: Option<PathBuf>) -> CliResult {
    let file = fs::File::open(model_path).map_err(|e| {
        fail(
            EXIT_MODEL_IO,
            format!("cannot open model {}: {e}", model_path.display()),
        )
    })?;
    let model = TrainedModel::load(file).map_err(|e| fail(EXIT_MODEL_IO, e))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emit = |id: &str, text: &str| -> CliResult {
        let prediction = model.predict_text(text);
        writeln!(
            out,
            "{id}\t{}\t{:.6}",
            prediction.label.tag(),
            prediction.score
        )
        .map_err(|e| fail(EXIT_RUNTIME, e))
    };
    match (text, input) {
        (Some(text), None) => emit("text", &text),
        (None, Some(path)) => {
            let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
                Box::new(std::io::stdin().lock())
            } else {
                let file = fs::File::open(&path).map_err(|e| fail(EXIT_INPUT, e))?;
                Box::new(std::io::BufReader::new(file))
            };
            for (idx, line) in reader.lines().enumerate() {
                let line = line.map_err(|e| fail(EXIT_INPUT, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                match line.split_once('\t') {
                    Some((id, text)) => emit(id, text)?,
                    None => emit(&format!("{}", idx + 1), &line)?,
                }
            }
            Ok(())
        }
        (Some(_), Some(_)) => Err(fail(EXIT_INPUT, "pass only one of --text or --input")),
        (None, None) => Err(fail(EXIT_INPUT, "pass --text or --input")),
    }
}

fn cmd_evaluate(
    pipeline: &PipelineArgs,
    method: &str,
    train_fraction: f64,
    threshold: f64,
) -> CliResult {
    let config = effective_config(pipeline)?;
    let method: Method = method.parse().map_err(|e| fail(EXIT_INPUT, e))?;
    let train_config = config.train_config().map_err(|e| fail(EXIT_INPUT, e))?;
    let corpus = load_corpus_or_demo(config.corpus.as_deref(), config.format)?;
    let stopwords = load_stopwords(config.stopwords.as_deref())?;
    let split = corpus
        .split(train_fraction, train_config.seed)
        .map_err(|e| fail(EXIT_INPUT, e))?;
    let report = eval::run_sweep(
        &corpus,
        &[method],
        &eval::SweepConfig {
            start: train_fraction,
            end: train_fraction,
            step: 1.0,
            stratified: false,
        },
        &train_config,
        &stopwords,
        config.weighting,
        1,
    )
    .map_err(|e| fail(EXIT_RUNTIME, e))?;
    let row = &report.rows[0];
    println!("method:        {}", row.method.tag());
    println!(
        "train/test:    {}/{} (fraction {:.2}, seed {})",
        split.train.len(),
        split.test.len(),
        train_fraction,
        row.seed
    );
    println!("accuracy:      {:.6}", row.accuracy);
    println!(
        "confusion:     tp={} fp={} tn={} fn={}",
        row.confusion.true_pos,
        row.confusion.false_pos,
        row.confusion.true_neg,
        row.confusion.false_neg
    );
    match threshold_check(row, threshold) {
        ThresholdOutcome::Pass => println!("threshold {threshold:.2}: pass"),
        ThresholdOutcome::NeedMoreTrainingData => {
            println!("threshold {threshold:.2}: need more training data")
        }
    }
    Ok(())
}

/// Classify sweep-time errors: bad fractions/config are input errors, the
/// rest is a runtime failure.
fn sweep_error(e: eval::EvalError) -> CliError {
    use sentimen::corpus::CorpusError;
    match &e {
        eval::EvalError::Corpus(
            CorpusError::FractionOutOfRange(_)
            | CorpusError::EmptySweep
            | CorpusError::CorpusTooSmall(_),
        )
        | eval::EvalError::NoMethods => fail(EXIT_INPUT, e),
        eval::EvalError::Classifier(classifiers::ClassifierError::InvalidConfig(_)) => {
            fail(EXIT_INPUT, e)
        }
        _ => fail(EXIT_RUNTIME, e),
    }
}

fn cmd_sweep(
    pipeline: &PipelineArgs,
    methods: Option<String>,
    output_dir: Option<PathBuf>,
    jobs: Option<usize>,
) -> CliResult {
    let mut config = effective_config(pipeline)?;
    if let Some(methods) = methods {
        config.methods = parse_methods(&methods).map_err(|e| fail(EXIT_INPUT, e))?;
    }
    if let Some(dir) = output_dir {
        config.output_dir = dir;
    }
    if let Some(jobs) = jobs {
        config.jobs = jobs;
    }
    let train_config = config.train_config().map_err(|e| fail(EXIT_INPUT, e))?;
    let corpus = load_corpus_or_demo(config.corpus.as_deref(), config.format)?;
    let stopwords = load_stopwords(config.stopwords.as_deref())?;

    let report = eval::run_sweep(
        &corpus,
        &config.methods,
        &config.sweep,
        &train_config,
        &stopwords,
        config.weighting,
        config.jobs,
    )
    .map_err(sweep_error)?;

    fs::create_dir_all(&config.output_dir).map_err(|e| fail(EXIT_RUNTIME, e))?;
    let write = |name: &str, f: &dyn Fn(&mut Vec<u8>) -> Result<(), eval::EvalError>| {
        let mut buf = Vec::new();
        f(&mut buf).map_err(|e| fail(EXIT_RUNTIME, e))?;
        let path = config.output_dir.join(name);
        fs::write(&path, buf).map_err(|e| fail(EXIT_RUNTIME, e))?;
        Ok::<PathBuf, CliError>(path)
    };
    let csv_path = write("sweep.csv", &|w| report.write_csv(w))?;
    let json_path = write("sweep.json", &|w| report.write_json(w))?;
    let svg_path = write("sweep.svg", &|w| report.write_svg_chart(w))?;

    println!(
        "wrote {}, {}, {}",
        csv_path.display(),
        json_path.display(),
        svg_path.display()
    );
    print_summary(&report);
    Ok(())
}

fn print_summary(report: &SweepReport) {
    println!("best method per train fraction:");
    for (fraction, method, accuracy) in report.best_method_per_fraction() {
        println!("  {fraction:.2}  {:<13} {accuracy:.6}", method.tag());
    }
    let means: Vec<String> = report
        .mean_accuracy_by_method()
        .into_iter()
        .map(|(m, a)| format!("{} {a:.4}", m.tag()))
        .collect();
    println!("mean accuracy: {}", means.join(" | "));
}

fn cmd_report(input: &Path, format: &str, output: Option<PathBuf>) -> CliResult {
    let raw = fs::read_to_string(input).map_err(|e| {
        fail(
            EXIT_INPUT,
            format!("cannot read report {}: {e}", input.display()),
        )
    })?;
    let report = SweepReport::from_json(&raw).map_err(|e| fail(EXIT_INPUT, e))?;
    let emit = |writer: &mut dyn Write| -> Result<(), CliError> {
        match format {
            "csv" => report.write_csv(writer).map_err(|e| fail(EXIT_RUNTIME, e)),
            "json" => report.write_json(writer).map_err(|e| fail(EXIT_RUNTIME, e)),
            "svg" => report
                .write_svg_chart(writer)
                .map_err(|e| fail(EXIT_RUNTIME, e)),
            other => Err(fail(EXIT_INPUT, format!("unknown report format {other:?}"))),
        }
    };
    match format {
        "summary" => {
            println!(
                "sweep of {} rows over corpus {}",
                report.rows.len(),
                &report.corpus_fingerprint[..12]
            );
            print_summary(&report);
            Ok(())
        }
        _ => match output {
            Some(path) => {
                let mut buf = Vec::new();
                emit(&mut buf)?;
                fs::write(&path, buf).map_err(|e| fail(EXIT_RUNTIME, e))?;
                println!("wrote {}", path.display());
                Ok(())
            }
            None => {
                let stdout = std::io::stdout();
                let mut out = stdout.lock();
                emit(&mut out)
            }
        },
    }
}
