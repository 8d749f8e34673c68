use thiserror::Error;

/// Errors produced by the simulation toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidInput(String),

    /// A caller violated an operation precondition.
    #[error("contract violated: {0}")]
    Contract(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        last_iterate: Vec<f64>,
    },

    #[error("graph generation failed: {0}")]
    Generation(String),

    #[error("graph {index} of the ensemble failed: {source}")]
    Ensemble {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate sample: all paired differences are zero")]
    DegenerateSample,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Short machine-readable category used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "input",
            Error::Contract(_) => "contract",
            Error::NonConvergence { .. } => "numeric",
            Error::Generation(_) => "generation",
            Error::Ensemble { source, .. } => source.code(),
            Error::DegenerateSample => "degenerate",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }

    /// True when the failure stems from bad user input rather than a
    /// runtime or numeric problem.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::InvalidInput(_)
            | Error::Contract(_)
            | Error::DegenerateSample
            | Error::Parse { .. }
            | Error::Csv(_)
            | Error::Json(_) => true,
            Error::Ensemble { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
