//! Cograph and binary-structure decomposition toolkit: modular
//! decomposition with strong/robust modules and Gallai quotients, the
//! cograph/valued-meet-tree correspondence, labelled chains over finite
//! quasi-orders, sibling classification of finitely presented countable
//! cographs, and the family generator for pairwise distinguishable
//! siblings.

pub mod chain;
pub mod cotree;
pub mod embedding;
pub mod error;
pub mod family;
pub mod graph;
pub mod modular;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod sibling;
pub mod structure;
pub mod term;

pub use error::{Error, Result};
pub use graph::Graph;
