use thiserror::Error;

use crate::shape::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape has no vertices")]
    EmptyShape,
    #[error("shape is not connected")]
    Disconnected,
    #[error("extra boundary vertex {0} is not a vertex of the shape")]
    ExtraBoundaryMissing(Vertex),
    #[error("extra boundary vertex {0} does not have degree 4")]
    ExtraBoundaryDegree(Vertex),
    #[error("shape exceeds {0} vertices")]
    TooLarge(usize),
    #[error("coordinate out of range: {0}")]
    CoordinateRange(i64),
    #[error("malformed shape spec: {0}")]
    ShapeSpec(String),
    #[error("malformed shape JSON: {0}")]
    ShapeJson(String),
    #[error("not a walk of the shape: {0}")]
    BadWalk(String),
    #[error("shape is not a reflected skew shape")]
    NotReflectedSkew,
    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    Cap {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("h-polynomial requested on a non-pure complex")]
    NotPure,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
