//! Run configuration: a flat `key = value` file driving reproducible runs.
//!
//! Format: UTF-8 lines of `key = value`; blank lines and lines starting with
//! `#` are ignored; on duplicate keys the last value wins. Relative paths are
//! resolved against the config file's directory, so a config can travel with
//! its data. `seed` is mandatory for anything that trains — there is no
//! wall-clock fallback — while every other key has a default. Command-line
//! flags override config keys.
//!
//! Recognized keys: `corpus`, `format`, `stopwords`, `weighting`, `methods`,
//! `seed`, `knn_k`, `dt_max_depth`, `dt_min_leaf`, `mlp_hidden`,
//! `mlp_learning_rate`, `mlp_epochs`, `nb_alpha`, `sweep_start`, `sweep_end`,
//! `sweep_step`, `stratified`, `output_dir`, `jobs`.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::classifiers::{Method, TrainConfig};
use crate::corpus::CorpusFormat;
use crate::eval::SweepConfig;
use crate::vectorize::Weighting;

/// Environment variable consulted for a default config path when no
/// `--config` flag is given.
pub const CONFIG_ENV_VAR: &str = "SENTIMEN_CONFIG";

/// Errors from reading and validating run configuration.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file not found: {0}")]
    MissingFile(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("seed is required (set `seed = <integer>` in the config or pass --seed)")]
    MissingSeed,
    #[error("referenced file does not exist: {0}")]
    MissingReferencedFile(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Everything a run needs: data locations, pipeline choices, hyperparameters,
/// sweep bounds, and output placement.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Corpus file; `None` selects the bundled 200-document demo corpus.
    pub corpus: Option<PathBuf>,
    pub format: CorpusFormat,
    /// Stopword file; `None` selects the bundled Indonesian list.
    pub stopwords: Option<PathBuf>,
    pub weighting: Weighting,
    pub methods: Vec<Method>,
    pub seed: Option<u64>,
    pub knn_k: usize,
    pub dt_max_depth: Option<usize>,
    pub dt_min_leaf: usize,
    pub mlp_hidden: usize,
    pub mlp_learning_rate: f64,
    pub mlp_epochs: usize,
    pub nb_alpha: f64,
    pub sweep: SweepConfig,
    pub output_dir: PathBuf,
    /// Worker threads for the sweep (1 = serial, 0 = all cores).
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let train = TrainConfig::new(0);
        RunConfig {
            corpus: None,
            format: CorpusFormat::Csv,
            stopwords: None,
            weighting: Weighting::CorpusNormalized,
            methods: Method::ALL.to_vec(),
            seed: None,
            knn_k: train.knn_k,
            dt_max_depth: train.dt_max_depth,
            dt_min_leaf: train.dt_min_leaf,
            mlp_hidden: train.mlp_hidden,
            mlp_learning_rate: train.mlp_learning_rate,
            mlp_epochs: train.mlp_epochs,
            nb_alpha: train.nb_alpha,
            sweep: SweepConfig::default_range(),
            output_dir: PathBuf::from("out"),
            jobs: 1,
        }
    }
}

fn resolve(base: Option<&Path>, value: &str) -> PathBuf {
    let path = PathBuf::from(value);
    match base {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path,
    }
}

fn parse_as<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| ConfigError::Parse {
        line,
        message: format!("invalid value {value:?} for {key}: {e}"),
    })
}

impl RunConfig {
    /// Read a config file. Defaults fill every unset key; relative paths are
    /// resolved against the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
        let path = path.as_ref();
        if !path.exists() {
            return Err(ConfigError::MissingFile(path.display().to_string()));
        }
        let content = fs::read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf);
        let mut config = RunConfig::default();
        for (idx, raw) in content.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Parse {
                line,
                message: format!("expected `key = value`, got {trimmed:?}"),
            })?;
            config.apply_key(key.trim(), value.trim(), base.as_deref(), line)?;
        }
        Ok(config)
    }

    /// Apply one `key = value` pair. `base` is the directory for resolving
    /// relative paths; `line` is used in error messages.
    pub fn apply_key(
        &mut self,
        key: &str,
        value: &str,
        base: Option<&Path>,
        line: usize,
    ) -> Result<(), ConfigError> {
        let invalid = |message: String| ConfigError::Parse { line, message };
        match key {
            "corpus" => self.corpus = Some(resolve(base, value)),
            "format" => {
                self.format = CorpusFormat::parse(value).map_err(|e| invalid(e.to_string()))?
            }
            "stopwords" => self.stopwords = Some(resolve(base, value)),
            "weighting" => {
                self.weighting = Weighting::parse(value).map_err(|e| invalid(e.to_string()))?
            }
            "methods" => {
                self.methods = parse_methods(value).map_err(invalid)?;
            }
            "seed" => self.seed = Some(parse_as(line, key, value)?),
            "knn_k" => self.knn_k = parse_as(line, key, value)?,
            "dt_max_depth" => {
                self.dt_max_depth = match value {
                    "" | "none" | "unlimited" => None,
                    _ => Some(parse_as(line, key, value)?),
                }
            }
            "dt_min_leaf" => self.dt_min_leaf = parse_as(line, key, value)?,
            "mlp_hidden" => self.mlp_hidden = parse_as(line, key, value)?,
            "mlp_learning_rate" => self.mlp_learning_rate = parse_as(line, key, value)?,
            "mlp_epochs" => self.mlp_epochs = parse_as(line, key, value)?,
            "nb_alpha" => self.nb_alpha = parse_as(line, key, value)?,
            "sweep_start" => self.sweep.start = parse_as(line, key, value)?,
            "sweep_end" => self.sweep.end = parse_as(line, key, value)?,
            "sweep_step" => self.sweep.step = parse_as(line, key, value)?,
            "stratified" => self.sweep.stratified = parse_as(line, key, value)?,
            "output_dir" => self.output_dir = resolve(base, value),
            "jobs" => self.jobs = parse_as(line, key, value)?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// The seed, or the mandatory-seed error.
    pub fn require_seed(&self) -> Result<u64, ConfigError> {
        self.seed.ok_or(ConfigError::MissingSeed)
    }

    /// Assemble the classifier hyperparameters. Fails when no seed is set.
    pub fn train_config(&self) -> Result<TrainConfig, ConfigError> {
        Ok(TrainConfig {
            seed: self.require_seed()?,
            knn_k: self.knn_k,
            dt_max_depth: self.dt_max_depth,
            dt_min_leaf: self.dt_min_leaf,
            mlp_hidden: self.mlp_hidden,
            mlp_learning_rate: self.mlp_learning_rate,
            mlp_epochs: self.mlp_epochs,
            nb_alpha: self.nb_alpha,
        })
    }

    /// Check that every referenced file exists.
    pub fn validate_files(&self) -> Result<(), ConfigError> {
        for path in [&self.corpus, &self.stopwords].into_iter().flatten() {
            if !path.exists() {
                return Err(ConfigError::MissingReferencedFile(
                    path.display().to_string(),
                ));
            }
        }
        Ok(())
    }
}

/// Parse a comma-separated method list; `all` selects every method.
pub fn parse_methods(value: &str) -> Result<Vec<Method>, String> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    let mut methods = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let method = part.parse::<Method>().map_err(|e| e.to_string())?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.is_empty() {
        return Err("method list is empty".to_string());
    }
    Ok(methods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_config(dir: &Path, content: &str) -> PathBuf {
        let path = dir.join("run.conf");
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn parses_a_full_config() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("tweets.csv"), "id,text,label\n").unwrap();
        let path = write_config(
            dir.path(),
            "# experiment setup\n\
             corpus = tweets.csv\n\
             format = csv\n\
             weighting = standard\n\
             methods = nb, knn\n\
             seed = 42\n\
             knn_k = 3\n\
             dt_max_depth = 4\n\
             mlp_learning_rate = 0.1\n\
             sweep_start = 0.3\n\
             sweep_end = 0.7\n\
             sweep_step = 0.2\n\
             stratified = true\n\
             output_dir = results\n\
             jobs = 2\n",
        );
        let config = RunConfig::from_file(&path).unwrap();
        assert_eq!(
            config.corpus.as_deref(),
            Some(dir.path().join("tweets.csv").as_path())
        );
        assert_eq!(config.weighting, Weighting::Standard);
        assert_eq!(config.methods, vec![Method::NaiveBayes, Method::Knn]);
        assert_eq!(config.seed, Some(42));
        assert_eq!(config.knn_k, 3);
        assert_eq!(config.dt_max_depth, Some(4));
        assert_eq!(config.mlp_learning_rate, 0.1);
        assert_eq!(config.sweep.start, 0.3);
        assert!(config.sweep.stratified);
        assert_eq!(config.output_dir, dir.path().join("results"));
        assert_eq!(config.jobs, 2);
        // Unset keys keep their defaults.
        assert_eq!(config.mlp_epochs, 200);
        assert_eq!(config.nb_alpha, 1.0);
        config.validate_files().unwrap();
        let train = config.train_config().unwrap();
        assert_eq!(train.seed, 42);
        assert_eq!(train.knn_k, 3);
    }

    #[test]
    fn defaults_cover_everything_but_seed() {
        let config = RunConfig::default();
        assert_eq!(config.methods.len(), 4);
        assert_eq!(config.sweep.start, 0.25);
        assert_eq!(config.sweep.end, 0.75);
        assert!(matches!(
            config.train_config(),
            Err(ConfigError::MissingSeed)
        ));
    }

    #[test]
    fn last_duplicate_key_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(dir.path(), "seed = 1\nseed = 2\n");
        assert_eq!(RunConfig::from_file(&path).unwrap().seed, Some(2));
    }

    #[test]
    fn unknown_key_names_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(dir.path(), "seed = 1\nlearning_rate = 0.1\n");
        match RunConfig::from_file(&path) {
            Err(ConfigError::UnknownKey { line, key }) => {
                assert_eq!(line, 2);
                assert_eq!(key, "learning_rate");
            }
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn bad_values_are_rejected_with_context() {
        let dir = tempfile::tempdir().unwrap();
        for (content, needle) in [
            ("seed = soon\n", "seed"),
            ("methods = svm\n", "unknown method"),
            ("weighting = tfidf\n", "unknown weighting"),
            ("jobs\n", "key = value"),
        ] {
            let path = write_config(dir.path(), content);
            let err = RunConfig::from_file(&path).unwrap_err();
            let message = err.to_string();
            assert!(
                message.contains(needle),
                "expected {needle:?} in {message:?}"
            );
        }
    }

    #[test]
    fn absolute_paths_pass_through() {
        let dir = tempfile::tempdir().unwrap();
        let abs = dir.path().join("elsewhere.csv");
        let path = write_config(
            dir.path(),
            &format!("corpus = {}\nseed = 1\n", abs.display()),
        );
        let config = RunConfig::from_file(&path).unwrap();
        assert_eq!(config.corpus.as_deref(), Some(abs.as_path()));
        assert!(matches!(
            config.validate_files(),
            Err(ConfigError::MissingReferencedFile(_))
        ));
    }

    #[test]
    fn method_list_parsing() {
        assert_eq!(parse_methods("all").unwrap().len(), 4);
        assert_eq!(
            parse_methods("mlp, decision-tree").unwrap(),
            vec![Method::Mlp, Method::DecisionTree]
        );
        assert_eq!(parse_methods("nb,nb").unwrap(), vec![Method::NaiveBayes]);
        assert!(parse_methods("").is_err());
        assert!(parse_methods("svm").is_err());
    }

    #[test]
    fn dt_max_depth_accepts_none() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_config(dir.path(), "seed = 1\ndt_max_depth = none\n");
        assert_eq!(RunConfig::from_file(&path).unwrap().dt_max_depth, None);
    }
}
