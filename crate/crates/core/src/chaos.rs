//! Logistic-map sequence generation.
//!
//! The recurrence `x[n+1] = lambda * x[n] * (1 - x[n])` is evaluated strictly
//! left to right in the scalar's native precision, so a given build reproduces
//! its orbits bit for bit. For chaotic parameter choices the orbit still
//! diverges across compilers and platforms after a few dozen steps; anything
//! that must agree across implementations should compare short prefixes only.

use crate::error::{Error, Result};
use crate::float::Float;
use crate::Real;

/// Control parameter, initial value, and sample count for one orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams<F: Float = Real> {
    lambda: F,
    x0: F,
    length: usize,
}

impl<F: Float> LogisticParams<F> {
    /// Requires `0 < lambda <= 4`, `0 < x0 < 1` and `length >= 1`.
    ///
    /// `lambda = 4` is accepted but degenerate: the orbit can reach exactly
    /// 0 (x = 1/2 maps to 1, then to 0) and stays there. `x0` on the boundary
    /// is rejected because the orbit is trivially 0 from the first step.
    pub fn new(lambda: F, x0: F, length: usize) -> Result<Self> {
        if !(lambda > F::zero() && lambda <= F::from_f64(4.0)) {
            return Err(Error::LambdaOutOfRange(lambda.into_f64()));
        }
        if !(x0 > F::zero() && x0 < F::one()) {
            return Err(Error::X0OutOfRange(x0.into_f64()));
        }
        if length == 0 {
            return Err(Error::EmptySequence);
        }
        Ok(Self { lambda, x0, length })
    }

    pub fn lambda(&self) -> F {
        self.lambda
    }

    pub fn x0(&self) -> F {
        self.x0
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

/// Orbit samples; every value lies in `[0, 1]` and the sequence is non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence<F: Float = Real> {
    values: Vec<F>,
}

impl<F: Float> RealSequence<F> {
    pub fn new(values: Vec<F>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        for &v in &values {
            if !(v >= F::zero() && v <= F::one()) {
                return Err(Error::ValueOutOfRange(v.into_f64()));
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[inline]
pub(crate) fn step_unchecked<F: Float>(lambda: F, x: F) -> F {
    lambda * x * (F::one() - x)
}

/// One application of the map. The result lies in `[0, lambda/4]`.
pub fn step<F: Float>(lambda: F, x: F) -> Result<F> {
    if !(lambda > F::zero() && lambda <= F::from_f64(4.0)) {
        return Err(Error::LambdaOutOfRange(lambda.into_f64()));
    }
    if !(x >= F::zero() && x <= F::one()) {
        return Err(Error::ValueOutOfRange(x.into_f64()));
    }
    Ok(step_unchecked(lambda, x))
}

/// The full orbit `[x0, f(x0), f(f(x0)), ...]` with exactly `length` samples.
pub fn iterate<F: Float>(params: &LogisticParams<F>) -> RealSequence<F> {
    let mut values = Vec::with_capacity(params.length);
    let mut x = params.x0;
    values.push(x);
    for _ in 1..params.length {
        x = step_unchecked(params.lambda, x);
        debug_assert!(x >= F::zero() && x <= F::one());
        values.push(x);
    }
    RealSequence { values }
}
