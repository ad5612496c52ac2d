use okkit_core::Error as CoreError;

/// Failure of a command, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unknown names, malformed or inconsistent input files.
    #[error("{0}")]
    Usage(String),
    /// A numerical result missed its quality bar.
    #[error("{0}")]
    Quality(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 1 for numerical-quality failures, 2 for usage and validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Quality(_) => 1,
            CliError::Core(e) => {
                if is_validation(e) {
                    2
                } else {
                    1
                }
            }
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

/// Errors caused by the input rather than by the numerics.
pub fn is_validation(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::Parse { .. }
            | CoreError::UnknownEntry(_)
            | CoreError::Verification(_)
            | CoreError::InvalidDatum(_)
            | CoreError::InvalidConfig(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::RingMismatch
            | CoreError::EmptySemigroup
            | CoreError::NotInSemigroup(_)
            | CoreError::NoProjection(_)
            | CoreError::InconsistentProjection(_)
            | CoreError::FamilyConstruction(_)
            | CoreError::UnsupportedDimension(_)
            | CoreError::Unsupported(_)
            | CoreError::TooLarge(_)
    )
}
