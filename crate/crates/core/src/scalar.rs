//! Scalar abstraction shared by every real-valued quantity in the crate.
//!
//! Chain coefficients are always exact integers. Lengths, areas, masses,
//! capacities and LP tableaux are generic over [`Real`], implemented for
//! `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    /// Converts an integer count or coefficient.
    fn of_i64(x: i64) -> Self {
        Self::from_i64(x).expect("integer fits the scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative round-off scale used by the solvers' zero tests.
    fn round_off() -> Self {
        Self::epsilon() * Self::of(1024.0)
    }
}

impl Real for f32 {}
impl Real for f64 {}
