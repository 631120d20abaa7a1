#![cfg_attr(not(test), no_std)]

//! VC set systems over minor-free graphs and digraphs, and the distance
//! algorithms built on them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, the clock or a terminal lives in the companion `minorvc` crate.
//!
//! Layout:
//! - [`graph`], [`generate`]: graph representation, exact BFS/Dijkstra and
//!   test-corpus generators. This is the trusted brute-force side.
//! - [`division`]: heuristic r-divisions (connected clusters, exact boundaries).
//! - [`set_system`]: ball, LP-hat and shortest-path-tree families, shattering
//!   and VC-dimension search.
//! - [`pattern`]: finite and infinite distance patterns and the pattern trie.
//! - [`undirected`]: eccentricities, Wiener index, exact oracle, distance tuples.
//! - [`directed`]: nested-ball oracle and infinite-pattern eccentricities.
//! - [`lower_bound`]: the shattering gadget for shortest-path-tree systems.
//! - [`codec`]: versioned byte containers for the oracles.

extern crate alloc;

pub mod bitset;
pub mod codec;
pub mod directed;
pub mod dist;
pub mod division;
pub mod error;
pub mod generate;
pub mod graph;
pub mod lower_bound;
pub mod pattern;
pub mod planarity;
pub mod set_system;
pub mod undirected;

pub use dist::Dist;
pub use division::{Cluster, DivisionQuality, RDivision};
pub use error::{Error, Result};
pub use graph::{DistMatrix, DistanceRow, Edge, Graph};
