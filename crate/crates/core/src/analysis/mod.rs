//! Shape distances, λ sweeps, closed-form oracles and length estimation.

mod distance;
mod length;
pub mod oracles;
mod sweep;

pub use distance::flat_distance;
pub use length::euclidean_length;
pub use oracles::{disk_flatnorm, rounding_threshold, square_flatnorm_euclid, square_flatnorm_l1};
pub use sweep::{lambda_sweep, SweepCurve, SweepInput};
