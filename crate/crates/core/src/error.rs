use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: expected dimension {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("subspace is not contained in the ambient space")]
    NotSubspace,

    #[error("{file}:{line}: {message}")]
    Parse {
        file: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{file}: {message}")]
    Input { file: PathBuf, message: String },

    /// A structural identity (∂∂ = 0, associativity, simplicial identity, ...)
    /// fails on loaded data.
    #[error("axiom violated: {identity} ({detail})")]
    Axiom { identity: String, detail: String },

    #[error("degree {degree}: chain is not a cycle")]
    NotACycle { degree: usize },

    #[error("degree {degree}: chain is not a boundary")]
    NotABoundary { degree: usize },

    /// A quantity that is zero by theory turned out nonzero.
    #[error("certification failed in {stage}: {detail}")]
    Certification { stage: &'static str, detail: String },

    #[error("seed does not extend: obstruction in cochain degree {degree}")]
    Obstruction { degree: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn axiom(identity: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Axiom {
            identity: identity.into(),
            detail: detail.into(),
        }
    }

    pub fn certification(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Certification {
            stage,
            detail: detail.into(),
        }
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit status: 2 for bad input, 1 for a mathematical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Input { .. } | Error::Axiom { .. } | Error::Io(_) => 2,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}
