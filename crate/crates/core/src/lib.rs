//! Edge-colouring multigraphs with Tashkinov trees.
//!
//! The crate builds maximal Tashkinov trees from an uncoloured edge, checks
//! elementarity and defective colours, computes the density `ρ(G)` exactly,
//! and searches the Kempe-reachable colourings of small graphs up to colour
//! relabelling and graph automorphism.

pub mod cli;
pub mod colouring;
pub mod density;
pub mod error;
pub mod explorer;
pub mod extension;
pub mod fixtures;
pub mod format;
pub mod kempe;
pub mod multigraph;
pub mod tashkinov;
pub mod witness;

pub use colouring::{Colour, ColourSet, PartialColouring};
pub use error::{Error, Result};
pub use multigraph::{EdgeId, Labels, Multigraph, VertexId, VertexSet};
