use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: u32, v: u32 },

    #[error("edge {{{u}, {v}}} has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: u32, v: u32, weight: f64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("infeasible generator configuration: {0}")]
    Infeasible(String),

    #[error("label vector has length {got}, graph has {expected} vertices")]
    LabelsLength { expected: usize, got: usize },

    #[error("community {target} is not adjacent to vertex {vertex}")]
    IllegalMove { vertex: u32, target: u32 },

    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("cannot sample from an empty marked set")]
    EmptyMarkedSet,

    #[error("need at least 3 distinct grid points for a fit, got {0}")]
    DegenerateGrid(usize),

    #[error("incremental state diverged from a rebuild: {0}")]
    AuditFailure(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
