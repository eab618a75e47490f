use thiserror::Error;

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("{object}: {axiom} fails at {indices:?}")]
    Violation {
        object: String,
        axiom: String,
        indices: Vec<usize>,
    },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("smash product axiom {0} fails")]
    PhiAxiomViolation(usize),
    #[error("entwining axiom {0} fails")]
    AxiomViolation(usize),
    #[error("module is not finitely generated projective")]
    NotProjective,
    #[error("neither candidate embedding of the base is an algebra map")]
    NoValidEmbedding,
    #[error("degree {degree} out of range (complex built to {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("brace with {args} arguments on an arity {arity} element")]
    ArityUnderflow { arity: usize, args: usize },
    #[error("Maurer-Cartan check needs characteristic other than 2")]
    CharTwoUnsupported,
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("{what} has dimension {dim}, above the limit {limit}")]
    DegreeCapExceeded { what: String, dim: usize, limit: usize },
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(object: &str, axiom: &str, indices: Vec<usize>) -> Error {
    Error::Violation {
        object: object.to_string(),
        axiom: axiom.to_string(),
        indices,
    }
}
