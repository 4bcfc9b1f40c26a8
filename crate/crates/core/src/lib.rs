//! Connected, chordal and perfect vertex partitions of graphs, their
//! quotients, and recursive graph families in which every chordal (or
//! perfect, or arbitrary connected) partition has a part containing a large
//! clique.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: immutable simple graphs and small-graph search primitives;
//! * [`io`]: graph6, DOT and JSON formats;
//! * [`decomposition`]: tree-decompositions, validation and composition;
//! * [`partition`]: partitions, quotients, restriction and enumeration;
//! * [`recognition`]: chordal and perfect graph recognition with certificates;
//! * [`construct`]: the three recursive families and their bounds;
//! * [`verify`]: exhaustive certification over all connected partitions.

pub mod construct;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod io;
pub mod limits;
pub mod partition;
pub mod recognition;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use limits::Limits;
