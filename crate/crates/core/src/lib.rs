//! Toolkit for properly edge-colored graphs with no rainbow path of a given
//! length: rainbow path/cycle enumeration, the hypercube-with-diagonals
//! construction, executable bound checkers, and an isomorph-free exhaustive
//! search for extremal graphs on few vertices.

pub mod checkers;
pub mod colored_graph;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod format;
pub mod rainbow;
pub mod search;

pub use colored_graph::{CanonicalKey, Color, ColorPartition, Edge, EdgeColoredGraph, Vertex};
pub use error::{Error, Result};
