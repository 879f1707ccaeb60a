use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse stratum `{0}`: {1}")]
    ParseSignature(String, String),
    #[error("orders sum to {sum}, which is not of the form {form}")]
    NonIntegralGenus { sum: i64, form: &'static str },
    #[error("orders sum to {0}, giving a negative genus")]
    NegativeGenus(i64),
    #[error("operation requires a quadratic stratum")]
    NotQuadratic,
    #[error("stratum {0} does not have genus zero")]
    NotGenusZero(String),
    #[error("stratum {0} is empty")]
    EmptyStratum(String),
    #[error("stratum {0} has no hyperelliptic connected component")]
    NoHyperellipticComponent(String),
    #[error("inconsistent configuration: {0}")]
    InconsistentConfiguration(String),
    #[error("non-orientable or inconsistent arc gluing: {0}")]
    NonOrientableGluing(String),
    #[error("cannot lift configuration: {0}")]
    UnliftableConfiguration(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
