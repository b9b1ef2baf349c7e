use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("steady state is not unique: {n_components} disconnected components ({summary})")]
    NonUniqueSteadyState { n_components: usize, summary: String },

    #[error("steady-state solve failed: {0}")]
    SingularSystem(String),

    #[error("population {value:e} at level {level} is below the physicality floor")]
    NegativePopulation { level: usize, value: f64 },

    #[error("unstable parameters: {0}")]
    Unstable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
