use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("singular block/vertex: {0}")]
    Singular(String),
    #[error("inadmissible edge block on ({0},{1})")]
    InadmissibleEdge(usize, usize),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("irrational spectrum: block with trace {trace} and determinant {det}")]
    IrrationalSpectrum { trace: String, det: String },
    #[error("orbit too large: n = {0} exceeds 8")]
    OrbitTooLarge(usize),
    #[error("unsupported prime {0}")]
    BadPrime(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
