use std::fmt;

use thiserror::Error;

/// Oracle query kinds. DEG and NEIGH are always available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Deg,
    Neigh,
    NeighSorted,
    Jump,
    Adj,
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QueryKind::Deg => "DEG",
            QueryKind::Neigh => "NEIGH",
            QueryKind::NeighSorted => "NEIGH-SORTED",
            QueryKind::Jump => "JUMP",
            QueryKind::Adj => "ADJ",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex {v} (graph has {n} vertices)")]
    InvalidVertex { v: usize, n: usize },
    #[error("invalid neighbour index {i} for vertex {v} of degree {degree}")]
    InvalidIndex { v: usize, i: usize, degree: usize },
    #[error("{0} query is not enabled in this access model")]
    ModelViolation(QueryKind),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("quadruple not swappable: {0}")]
    Swap(String),
    #[error("cannot generate family: {0}")]
    Generation(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
