//! Scalar abstraction for the floating-point layers.
//!
//! Geometry and embedding code is generic over [`Real`] so the same
//! algorithms run in `f32` or `f64`; concrete aliases at the crate root pin
//! `f64` for ordinary use.

use std::fmt::{Debug, Display};

/// Floating-point scalar usable for coordinates, lengths and objectives.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, for constants and tolerances.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must convert")
    }

    /// Lossy conversion to `f64`, for reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("real scalar must convert to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
