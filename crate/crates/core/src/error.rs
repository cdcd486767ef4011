use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not normal: {0}")]
    NotNormal(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A size guard was tripped; the question stays undecided.
    #[error("undecided: {what} reaches size {size}, bound is {bound}")]
    BoundExceeded { what: String, size: u128, bound: u128 },

    #[error("hypothesis refuted: {0}")]
    Refuted(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    /// An internal assertion of a construction failed.
    #[error("construction check failed at {path}: {detail}")]
    Construction { path: String, detail: String },
}

impl Error {
    pub fn bound(what: impl Into<String>, size: impl TryInto<u128>, bound: usize) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            size: size.try_into().unwrap_or(u128::MAX),
            bound: bound as u128,
        }
    }

    pub fn construction(path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Construction { path: path.into(), detail: detail.into() }
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
