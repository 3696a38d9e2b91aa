use alloc::boxed::Box;
use alloc::string::String;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument or configuration field is outside its valid domain.
    /// `what` names the offending argument or field.
    #[error("invalid {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// Logistic regression stopped before reaching the gradient tolerance.
    #[error("logistic regression did not converge after {iterations} iterations (gradient norm {gradient_norm:e})")]
    Convergence { iterations: usize, gradient_norm: f64 },

    /// A computation that requires one cost-benefit matrix for the whole
    /// population found individual variation.
    #[error("cost-benefit matrix of individual {index} differs from individual 0")]
    NonConstantCostBenefit { index: usize },

    /// Failure inside one repetition of a simulation.
    #[error("repetition {rep}: {source}")]
    Repetition { rep: u64, source: Box<Error> },
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn in_repetition(self, rep: u64) -> Self {
        Error::Repetition {
            rep,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping repetition wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Repetition { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
