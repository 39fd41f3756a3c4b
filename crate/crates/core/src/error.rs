use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("construction self-check failed: {0}")]
    Construction(String),
    #[error("{0:#08x} is not an octad")]
    NotAnOctad(u32),
    #[error("invalid payload: {0}")]
    InvalidPayload(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("gram matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("not an ADE diagram: {0}")]
    NotAde(String),
    #[error("fiber shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not divisible: remainder {0}")]
    NotDivisible(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("singular linear system")]
    Singular,
    #[error("{0}")]
    Unsolvable(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
