use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse color {token:?}{}", index.map(|i| format!(" at position {i}")).unwrap_or_default())]
    Parse { token: String, index: Option<usize> },

    #[error("unknown palette {name:?}{}", suggestion_text(.suggestions))]
    NotFound { name: String, suggestions: Vec<String> },

    #[error("insufficient data: need at least {needed} colors, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

fn suggestion_text(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {})", suggestions.join(", "))
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Attaches a list position to a parse error.
    pub fn at_index(self, i: usize) -> Self {
        match self {
            Error::Parse { token, .. } => Error::Parse { token, index: Some(i) },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
