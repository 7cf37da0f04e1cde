use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("unknown surface name `{0}`")]
    UnknownSurface(String),
    #[error("region {0} is not a 2-cell of this surface")]
    RegionNotOnSurface(String),
    #[error("coloring does not assign a color to marked-point class {0}")]
    IncompleteColoring(String),
    #[error("surface failed validation: {0}")]
    InvalidSurface(String),
    #[error("symmetric count {n_s} exceeds class count {n}")]
    SymmetricCountExceedsTotal { n: usize, n_s: usize },
    #[error("{0}")]
    Unsupported(String),
}
