//! Loop generators: the bundled fixtures and the two hardness reductions
//! (hypergraph coloring, and Σ₂ QBF over integer loops).

pub mod fixtures;
pub mod hypergraph;
pub mod qbf;

pub use fixtures::{dimension_gap_loop, dimension_gap_loop_verbatim, intro_loop, maxdim_family};
pub use hypergraph::{hypergraph_to_loop, Hypergraph3};
pub use qbf::{qbf_to_loop, qbf_to_loop_padded, Qbf2Cnf};
