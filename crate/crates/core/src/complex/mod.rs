//! Oriented 2-D grid complexes and exact integer chain algebra.

mod chain;
mod grid;

pub use chain::{Chain, ChainDocument};
pub use grid::{ComplexId, ComplexParams, EdgeKind, FaceBoundary, GridComplex2, Topology};
