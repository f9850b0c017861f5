use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        param(format!("probability {p} is outside [0, 1]"))
    }
}
