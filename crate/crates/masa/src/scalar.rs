//! Scalar abstraction for the group-algebra side of the crate.
//!
//! Everything combinatorial (tables, machines, counting) works on integers;
//! the Hilbert-space amplitudes are `Complex<T>` for any `T: Scalar`.

use std::fmt;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar for amplitude arithmetic: f32 or f64.
pub trait Scalar: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Amplitudes with modulus below this are dropped from normal form.
    fn zero_threshold() -> Self;
}

impl Scalar for f64 {
    fn zero_threshold() -> Self {
        1e-15
    }
}

impl Scalar for f32 {
    fn zero_threshold() -> Self {
        1e-6
    }
}
