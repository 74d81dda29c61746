//! Constructions and checks for minimal Ramsey 3-uniform hypergraphs.
//!
//! - [`hypercore`]: the hypergraph model and its primitives.
//! - [`colorengine`]: clique-free colorings, arrowing, minimality, patterns, CNF.
//! - [`gadgets`]: signal senders, rainbow stars, equalizers, far gadgets, BEL assembly.
//! - [`codegree`]: the partition host and both sides of the codegree bound.
//! - [`randomlab`]: random 3-uniform families, pruning and counting experiments.

pub mod codegree;
pub mod colorengine;
pub mod error;
pub mod gadgets;
pub mod hypercore;
pub mod randomlab;

pub use error::{Error, Result};
pub use hypercore::{Edge, Hypergraph, Vertex};
