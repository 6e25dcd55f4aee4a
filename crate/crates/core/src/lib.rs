//! Multiscale flat norm of integer chains on planar grid complexes.
//!
//! `F_λ(T) = min_S M(T − ∂S) + λ M(S)` is computed exactly by linear
//! programming on small complexes, and for shape boundaries by minimum cut
//! on the pixel grid. Real-valued quantities are generic over [`Real`];
//! the aliases below fix the common choices.

pub mod analysis;
pub mod complex;
pub mod error;
pub mod graphcut;
pub mod lp;
pub mod result;
mod scalar;
pub mod shape_io;

pub use analysis::{euclidean_length, flat_distance, lambda_sweep, SweepCurve, SweepInput};
pub use complex::{Chain, ChainDocument, ComplexParams, GridComplex2, Topology};
pub use error::{Error, Result};
pub use graphcut::{corner_rounding_check, flatnorm_graphcut, l1tv_denoise, NeighborhoodStencil};
pub use lp::{exhaustive_oracle, flatnorm_lp};
pub use result::{Diagnostics, FlatNormResult, Method};
pub use scalar::Real;
pub use shape_io::{BinaryShape, Frame, Region};

pub type GridComplex64 = GridComplex2<f64>;
pub type GridComplex32 = GridComplex2<f32>;
pub type Shape64 = BinaryShape<f64>;
pub type Shape32 = BinaryShape<f32>;
pub type FlatNorm64 = FlatNormResult<f64>;
pub type FlatNorm32 = FlatNormResult<f32>;
pub type Sweep64 = SweepCurve<f64>;
