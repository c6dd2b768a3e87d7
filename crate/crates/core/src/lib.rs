//! Counting and constructing directed cycles in oriented graphs.
//!
//! The crate is organised bottom-up: [`graph`] holds the digraph type and the
//! blow-up machinery, [`counting`] the exact counters, and the remaining
//! modules build constructions, densities, spectra and searches on top.

pub mod bitset;
pub mod constructions;
pub mod counting;
pub mod density;
pub mod error;
pub mod graph;
pub mod numtheory;
pub mod par;
pub mod rational;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Digraph, Mode};
pub use par::Execution;
