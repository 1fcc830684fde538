//! Constructive polynomial-time twins and clique finders, and the
//! deterministic bound calculator.

pub mod block;
pub mod bounds;
pub mod cliques;
pub mod perm_twins;
pub mod recursive;
pub mod split;

pub use block::{auto_block_size, block_twin_finder, BlockHypergraph, BlockSize};
pub use bounds::{bound_calculator, ell, eta, exponent_row, BoundParams, BoundReport, ExponentRow};
pub use cliques::clique_find;
pub use perm_twins::permutation_twins;
pub use recursive::{find_twins_recursive, Branch, RecursiveFinder};
pub use split::{split_counts, HalfSplit};
