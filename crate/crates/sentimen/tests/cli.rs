//! End-to-end tests of the `sentimen` binary: subcommand behavior, the
//! exit-code contract (0 success, 2 input/config, 3 model I/O, 4 runtime),
//! and byte-determinism of sweep artifacts.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sentimen"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn assert_code(output: &Output, want: i32) {
    assert_eq!(
        output.status.code(),
        Some(want),
        "stdout: {}\nstderr: {}",
        stdout(output),
        stderr(output)
    );
}

#[test]
fn ingest_bundled_corpus_reports_balance() {
    let output = run(&["ingest"]);
    assert_code(&output, 0);
    assert!(stdout(&output).contains("200 documents (100 positive / 100 negative)"));
}

#[test]
fn ingest_missing_file_is_input_error() {
    let output = run(&["ingest", "--corpus", "/no/such/file.csv"]);
    assert_code(&output, 2);
    assert!(stderr(&output).contains("error:"));
}

#[test]
fn ingest_malformed_csv_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "id,text,label\nt1,hello,maybe\n").unwrap();
    let output = run(&["ingest", "--corpus", path.to_str().unwrap()]);
    assert_code(&output, 2);
}

#[test]
fn unknown_flag_is_usage_error() {
    let output = run(&["evaluate", "--badflag"]);
    assert_code(&output, 2);
}

#[test]
fn preprocess_text_prints_tokens() {
    let output = run(&[
        "preprocess",
        "--text",
        "Benar juga, kpu yang membuat rakyat resah. Aduh kejamnya kecurangan.",
    ]);
    assert_code(&output, 0);
    assert_eq!(
        stdout(&output).trim(),
        "benar kpu membuat rakyat resah kejamnya kecurangan"
    );
}

#[test]
fn preprocess_requires_exactly_one_input() {
    let output = run(&["preprocess"]);
    assert_code(&output, 2);
}

fn train_model(dir: &Path, method: &str) -> String {
    let model = dir.join(format!("{method}.json"));
    let output = run(&[
        "train",
        "--method",
        method,
        "--seed",
        "9",
        "--mlp-epochs",
        "50",
        "--output",
        model.to_str().unwrap(),
    ]);
    assert_code(&output, 0);
    model.to_str().unwrap().to_string()
}

#[test]
fn train_then_predict_tsv_lines() {
    let dir = tempfile::tempdir().unwrap();
    let model = train_model(dir.path(), "naive_bayes");

    let output = run(&[
        "predict",
        "--model",
        &model,
        "--text",
        "hasil rekapitulasi bikin rakyat kecewa dan marah",
    ]);
    assert_code(&output, 0);
    let line = stdout(&output);
    let fields: Vec<&str> = line.trim_end().split('\t').collect();
    assert_eq!(fields.len(), 3, "line: {line:?}");
    assert_eq!(fields[0], "text");
    assert!(fields[1] == "negative" || fields[1] == "positive");
    let score: f64 = fields[2].parse().unwrap();
    assert!((0.0..=1.0).contains(&score));
}

#[test]
fn predict_reads_stdin_and_preserves_ids() {
    let dir = tempfile::tempdir().unwrap();
    let model = train_model(dir.path(), "knn");

    let mut child = bin()
        .args(["predict", "--model", &model, "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"a1\tpemilu berjalan lancar dan damai\nbare text line without id\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_code(&output, 0);
    let lines: Vec<String> = stdout(&output).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("a1\t"), "line: {}", lines[0]);
    assert!(lines[1].starts_with("2\t"), "line: {}", lines[1]);
}

#[test]
fn predict_empty_input_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let model = train_model(dir.path(), "decision_tree");
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let output = run(&[
        "predict",
        "--model",
        &model,
        "--input",
        empty.to_str().unwrap(),
    ]);
    assert_code(&output, 0);
    assert!(stdout(&output).is_empty());
}

#[test]
fn predict_missing_or_corrupt_model_is_model_error() {
    let output = run(&["predict", "--model", "/no/such/model.json", "--text", "hi"]);
    assert_code(&output, 3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("corrupt.json");
    fs::write(&bad, "{ not json").unwrap();
    let output = run(&["predict", "--model", bad.to_str().unwrap(), "--text", "hi"]);
    assert_code(&output, 3);

    // A syntactically valid file with an unsupported version is also a
    // model-load failure.
    let versioned = dir.path().join("future.json");
    fs::write(&versioned, "{\"format_version\": 999, \"model\": {}}").unwrap();
    let output = run(&[
        "predict",
        "--model",
        versioned.to_str().unwrap(),
        "--text",
        "hi",
    ]);
    assert_code(&output, 3);
}

#[test]
fn evaluate_prints_accuracy_and_threshold() {
    let output = run(&[
        "evaluate",
        "--method",
        "naive_bayes",
        "--seed",
        "42",
        "--train-fraction",
        "0.75",
    ]);
    assert_code(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("accuracy:"), "output: {text}");
    assert!(text.contains("train/test:    150/50"), "output: {text}");
    assert!(text.contains("threshold 0.80:"), "output: {text}");
}

#[test]
fn evaluate_without_seed_is_config_error() {
    let output = run(&["evaluate", "--method", "naive_bayes"]);
    assert_code(&output, 2);
    assert!(
        stderr(&output).contains("seed"),
        "stderr: {}",
        stderr(&output)
    );
}

#[test]
fn sweep_writes_artifacts_and_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let output = run(&[
            "sweep",
            "--seed",
            "42",
            "--mlp-epochs",
            "60",
            "--jobs",
            "0",
            "--output-dir",
            out.to_str().unwrap(),
        ]);
        assert_code(&output, 0);
        assert!(stdout(&output).contains("best method per train fraction"));
    }
    for name in ["sweep.csv", "sweep.json", "sweep.svg"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }

    let csv = fs::read_to_string(out_a.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "train_fraction,method,accuracy,tp,fp,tn,fn,seed");
    assert_eq!(lines.len(), 45); // header + 11 fractions x 4 methods
}

#[test]
fn sweep_reads_config_file_and_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = dir.path().join("run.conf");
    fs::write(
        &config,
        format!(
            "seed = 5\nmethods = naive_bayes\nmlp_epochs = 10\noutput_dir = {}\n",
            out.display()
        ),
    )
    .unwrap();

    let output = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_code(&output, 0);
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 12); // header + 11 fractions x 1 method
    assert!(csv.contains(",naive_bayes,"));

    // Same config picked up through the environment variable.
    let out_env = dir.path().join("out_env");
    let output = bin()
        .args(["sweep", "--output-dir", out_env.to_str().unwrap()])
        .env("SENTIMEN_CONFIG", config.to_str().unwrap())
        .output()
        .unwrap();
    assert_code(&output, 0);
    assert_eq!(
        fs::read(out.join("sweep.csv")).unwrap(),
        fs::read(out_env.join("sweep.csv")).unwrap()
    );
}

#[test]
fn sweep_bad_step_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.conf");
    fs::write(&config, "seed = 7\nsweep_step = 0\n").unwrap();
    let output = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_code(&output, 2);
}

#[test]
fn sweep_unknown_config_key_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("typo.conf");
    fs::write(&config, "seed = 7\nsweeep_step = 0.1\n").unwrap();
    let output = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_code(&output, 2);
    assert!(
        stderr(&output).contains("sweeep_step"),
        "stderr: {}",
        stderr(&output)
    );
}

#[test]
fn report_reemits_saved_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let output = run(&[
        "sweep",
        "--seed",
        "3",
        "--methods",
        "knn,decision_tree",
        "--mlp-epochs",
        "10",
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert_code(&output, 0);

    let json = out.join("sweep.json");
    let summary = run(&["report", "--input", json.to_str().unwrap()]);
    assert_code(&summary, 0);
    assert!(stdout(&summary).contains("best method per train fraction"));

    // CSV re-emitted from JSON matches the sweep's own CSV byte for byte.
    let csv_out = dir.path().join("reemitted.csv");
    let reemit = run(&[
        "report",
        "--input",
        json.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        csv_out.to_str().unwrap(),
    ]);
    assert_code(&reemit, 0);
    assert_eq!(
        fs::read(&csv_out).unwrap(),
        fs::read(out.join("sweep.csv")).unwrap()
    );

    let missing = run(&["report", "--input", "/no/such/sweep.json"]);
    assert_code(&missing, 2);

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "not json at all").unwrap();
    let output = run(&["report", "--input", garbage.to_str().unwrap()]);
    assert_code(&output, 2);
}

#[test]
fn train_rejects_unknown_method_and_bad_hyperparameters() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    let output = run(&[
        "train",
        "--method",
        "svm",
        "--seed",
        "1",
        "--output",
        model.to_str().unwrap(),
    ]);
    assert_code(&output, 2);

    // knn_k larger than the corpus is an input error at train time.
    let output = run(&[
        "train",
        "--method",
        "knn",
        "--seed",
        "1",
        "--knn-k",
        "100000",
        "--output",
        model.to_str().unwrap(),
    ]);
    assert_code(&output, 2);
}
