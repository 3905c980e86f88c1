//! Edge statistics of random k-vertex subsets of graphs and bounded-rank
//! hypergraphs: exact induced edge-count distributions, extremal
//! constructions, closed-form bound checks and executable proof devices.
//!
//! All counting is exact (`BigUint` counts, `BigRational` probabilities).
//! Real-valued bound expressions are evaluated as outward-rounded rational
//! intervals so that a reported pass can never be a rounding artifact.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod enumerate;
pub mod hypergraph;
pub mod interval;
pub mod prooflab;
pub mod search;
pub mod set;

pub use hypergraph::{Hypergraph, PairStats, SubsetProfile};
pub use set::VertexSet;

use thiserror::Error;

/// Errors shared by all modules of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0:?} is empty")]
    EmptyEdge(Vec<usize>),

    #[error("edge {edge:?} has size {size}, above the rank bound {rank}")]
    RankExceeded {
        edge: Vec<usize>,
        size: usize,
        rank: usize,
    },

    #[error("{n} vertices exceed the {max}-vertex ceiling for subset operations")]
    TooManyVertices { n: usize, max: usize },

    #[error("k = {k} exceeds the number of vertices n = {n}")]
    KExceedsN { k: usize, n: usize },

    #[error("projected work of about {estimate} units exceeds the ceiling of {ceiling} (set EDGESTAT_CEILING to raise it)")]
    WorkCeiling { estimate: f64, ceiling: f64 },

    #[error("{0} is not a subset of the ambient set")]
    NotASubset(String),

    #[error("vertex {0} must not lie in the reference set")]
    VertexInSet(usize),

    #[error("sequence contains duplicate vertices")]
    DuplicateVertices,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} requires {requirement}")]
    Inapplicable { what: String, requirement: String },

    #[error("no qualifying object exists: {0}")]
    DefinedEmpty(String),

    #[error("interval comparison unresolved at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Work ceiling for exhaustive enumeration, in visited-subset units.
///
/// Defaults to 10^9 subsets and can be overridden with the
/// `EDGESTAT_CEILING` environment variable.
pub fn work_ceiling() -> f64 {
    std::env::var("EDGESTAT_CEILING")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(1e9)
}
