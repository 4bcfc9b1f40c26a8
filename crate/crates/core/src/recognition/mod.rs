//! Chordal and perfect graph recognition with re-verified certificates, and
//! the exact colouring / clique oracles used to cross-check them.

mod chordal;
mod color;
mod holes;

pub use chordal::{
    is_chordal, is_perfect_elimination_ordering, maximum_cardinality_search, ChordalCertificate,
};
pub use color::{chromatic_number, max_clique_size};
pub(crate) use holes::is_perfect_rows;
pub use holes::{
    find_induced_cycle_of_length, find_induced_long_cycle, is_induced_cycle, is_perfect_small,
    PerfectCertificate,
};
