use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown label {label} (complex has {species} species)")]
    UnknownLabel { label: usize, species: usize },

    #[error("{what} has {size} elements, over the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("species combination {0:?} is absent or undersized")]
    AbsentCombination(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
