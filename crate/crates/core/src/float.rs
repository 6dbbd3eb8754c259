//! Scalar abstraction for the numeric core.
//!
//! Everything that manipulates sequence values, correlations, or geometry is
//! generic over [`Float`]; the CLI pipeline instantiates it at `f64` (see
//! [`crate::Real`]) so results are reproducible in double precision.

use std::fmt;

/// Floating-point scalar: `f32` or `f64`.
pub trait Float:
    num_traits::Float + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self;
    fn into_f64(self) -> f64;

    fn from_usize(v: usize) -> Self {
        Self::from_f64(v as f64)
    }
}

impl Float for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }

    fn into_f64(self) -> f64 {
        self as f64
    }
}

impl Float for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn into_f64(self) -> f64 {
        self
    }
}
