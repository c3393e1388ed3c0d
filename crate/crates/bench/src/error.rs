use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid suite spec: {0}")]
    InvalidSpec(String),
    #[error("{0}")]
    Format(String),
    #[error("{path}: bad instance: {message}")]
    Instance { path: PathBuf, message: String },
    #[error("{path}:{line}: corrupt results line `{content}`")]
    CorruptResults { path: PathBuf, line: usize, content: String },
    #[error("run failed on {instance_id}: {message}")]
    Run { instance_id: String, message: String },
    #[error("incomplete design: no result for algorithm `{algorithm}` on instance `{instance}`")]
    IncompleteDesign { instance: String, algorithm: String },
    #[error("{0}")]
    Stats(String),
    #[error("unsupported significance level {0} (expected 0.05 or 0.10)")]
    UnsupportedAlpha(f64),
    #[error("no runs to export")]
    EmptyInput,
}

impl BenchError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }
}
