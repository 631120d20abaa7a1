use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("zero weight on edge {u}-{v}")]
    ZeroWeight { u: usize, v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph with {n} vertices exceeds the limit of {cap} for {what}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("algorithm requires unit edge weights")]
    NotUnitWeight,
    #[error("algorithm requires an undirected graph")]
    NotUndirected,
    #[error("algorithm requires a directed graph")]
    NotDirected,
    #[error("boundary vertex {0} is unreachable")]
    UnreachableBoundary(usize),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("unsupported format version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
