use crate::poly::VarId;

/// Errors produced by the symbolic routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("variable {0} has no image in the substitution map")]
    UnmappedVariable(VarId),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("polynomial has degree {degree} in {var}, expected at most 1")]
    NotLinear { var: VarId, degree: u32 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("variable {0} is not a jet variable")]
    UnsupportedVariable(VarId),

    #[error("resource limit exceeded: {what} needs {size}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
