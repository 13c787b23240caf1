//! Scalar abstraction shared by the numeric, polynomial and trace layers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar the matrix and polynomial code is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances throughout the crate are
/// written for double precision and rescaled through [`Real::tol`], so the
/// same code path runs (with looser guarantees) in single precision.
pub trait Real:
    Float
    + NumAssign
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only on NaN-producing conversions,
    /// which cannot happen for the finite values used internally.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Rescales a double-precision tolerance to this type's machine epsilon.
    fn tol(base: f64) -> Self {
        let scale = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::lit(base * scale.max(1.0))
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
