use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("io: {0}")]
    Stream(#[from] std::io::Error),
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported format version {0}.{1}")]
    UnsupportedVersion(u8, u8),
    #[error("unsupported dtype {0:?}, expected '<f4'")]
    UnsupportedDtype(String),
    #[error("unsupported order: Fortran-ordered arrays are not supported")]
    FortranOrder,
    #[error("shape rank {0} ≠ 2")]
    BadRank(usize),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("truncated data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("feature file needs a timestamp column and at least one feature column")]
    TooFewColumns,
    #[error("refusing to write an empty sequence")]
    EmptySequence,
    #[error("{}:{line}: {source}", path.display())]
    AnchorLine { path: PathBuf, line: usize, source: serde_json::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("invalid MOFA_THREADS value {0:?}")]
    Threads(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] mofa_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| Error::Io { path, source }
    }
}
