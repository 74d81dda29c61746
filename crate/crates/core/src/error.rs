use thiserror::Error;

use crate::hypercore::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex not in hypergraph: {0}")]
    UnknownVertex(u32),

    #[error("edge {0} is not an edge of the hypergraph")]
    UnknownEdge(Edge),

    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    WrongEdgeSize {
        edge: Vec<u32>,
        expected: usize,
        got: usize,
    },

    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),

    #[error("uniformity mismatch: expected {expected}, got {got}")]
    UniformityMismatch { expected: usize, got: usize },

    #[error("unsupported uniformity {0}")]
    BadUniformity(usize),

    #[error("set size {size} out of range for {what}")]
    OutOfRange { what: &'static str, size: usize },

    #[error("non-injective glue: vertices {0} and {1} of the same side would be merged")]
    NonInjectiveGlue(u32, u32),

    #[error("coloring is not total: edge {0} has no color")]
    PartialColoring(Edge),

    #[error("coloring assigns a color to {0}, which is not an edge of the hypergraph")]
    StrayColor(Edge),

    #[error("color {color} outside 1..={k}")]
    BadColor { color: u8, k: u8 },

    #[error("coloring is not free: {0} monochromatic clique(s)")]
    NotFree(usize),

    #[error("search budget exhausted after {nodes} nodes")]
    Unknown { nodes: u64 },

    #[error("input is not Ramsey for the target clique")]
    NotRamsey,

    #[error("m below r_k: the complete hypergraph on the given vertex count is not Ramsey")]
    BelowRamseyNumber,

    #[error("input already admits an admissible coloring")]
    AlreadyAdmissible,

    #[error("input hypergraph is not linear")]
    NotLinear,

    #[error("missing or malformed tag: {0}")]
    BadTag(&'static str),

    #[error("distance {got} below the required {need}")]
    DistanceTooSmall { got: u32, need: u32 },

    #[error("precondition of lower bound violated: codegree {codegree} >= (t-2)^2 = {bound}")]
    LowerBoundPrecondition { codegree: usize, bound: usize },

    #[error("extended coloring has {0} monochromatic clique(s); the lower-bound argument failed")]
    LowerBoundFailed(usize),

    #[error("no Ramsey table entry for r_{k}({ell})")]
    MissingRamseyEntry { k: u32, ell: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("instance too large for exhaustive check: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
