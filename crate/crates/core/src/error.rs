use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge end {end} at vertex {vertex}, position {position}")]
    DuplicateEdgeEnd {
        end: String,
        vertex: String,
        position: usize,
    },
    #[error("missing end {end}")]
    MissingEdgeEnd { end: String },
    #[error("duplicate label {label}")]
    DuplicateLabel { label: String },
    #[error("duplicate vertex name {name}")]
    DuplicateVertex { name: String },
    #[error("dangling reference {end} at vertex {vertex}, position {position}")]
    DanglingReference {
        end: String,
        vertex: String,
        position: usize,
    },
    #[error("invalid edge end {end} at vertex {vertex}, position {position}: end index must be 1 or 2")]
    InvalidEndIndex {
        end: String,
        vertex: String,
        position: usize,
    },
    #[error("unknown edge label {0}")]
    UnknownLabel(String),
    #[error("label {label} carries {count} arrows, expected 2")]
    ArrowCount { label: String, count: usize },
    #[error("mark label {label} appears {count} times, expected 2")]
    UnmatchedMark { label: String, count: usize },
    #[error("mark label {0} collides with an edge label")]
    MarkLabelClash(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid sum: {0}")]
    InvalidSum(String),
    #[error("edge set {0} is not a join-summand")]
    NotJoinSummand(String),
    #[error("graph has {edges} edges, above the enumeration bound {bound}")]
    EnumerationBound { edges: usize, bound: usize },
    #[error("subset over {found} edges used with a graph of {expected} edges")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
