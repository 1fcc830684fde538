//! Twins in ordered r-uniform matchings: data model, generation, exact
//! oracles, constructive finders and an experiment harness.

pub mod builder;
mod clique;
pub mod error;
pub mod gen;
pub mod lab;
pub mod matching;
pub mod oracle;
pub mod pattern;
pub mod perm;
pub mod twins;

pub use error::{Error, Result};
pub use matching::{parse_word, Edge, OrderedMatching};
pub use pattern::{enumerate_patterns, pattern_of, Pattern};
pub use perm::Permutation;
pub use twins::{verify_twins, TwinsCertificate};
