//! Monoid interpretations of edge-labelled trees and the combinatorics around them:
//! forward Ramseyan splits, marked gap-embeddings, boughs, regular and periodic
//! graph sequences, and path extraction by existential transductions.

pub mod bough;
pub mod corpus;
pub mod deadline;
pub mod error;
pub mod graph;
pub mod interp;
pub mod io;
pub mod monoid;
pub mod nested;
pub mod sequence;
pub mod split;
pub mod transduce;
pub mod tree;

pub use deadline::Deadline;
pub use error::{Error, Result};
pub use graph::{DirectedGraph, LabelOrder, LabelledGraph};
pub use monoid::{Element, FiniteMonoid, Morphism};
pub use tree::{LabelledTree, NodeId, Shape};
pub use interp::MonoidInterpretation;
pub use nested::{Mark, MarkedNestedTree};
pub use split::Split;
