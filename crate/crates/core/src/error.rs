use thiserror::Error;

use crate::translates::SuitabilityFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} out of range for universe of size {universe}")]
    Range { element: usize, universe: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured cap was hit. Distinct from a negative answer.
    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },

    #[error("not a suitable index: {0}")]
    Suitability(SuitabilityFailure),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
