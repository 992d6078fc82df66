//! Scalar abstraction shared by every floating-point module.
//!
//! Numerical code is written once against [`Scalar`] and instantiated for
//! `f64` (the default, see the aliases in the crate root) and `f32`.
//! Tolerances that depend on the precision live here so callers do not
//! hard-code `1e-12` against a single-precision type.

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Relative symmetry tolerance accepted by [`crate::specops::SymMatrix`].
    const SYMMETRY_TOL: f64;
    /// Relative residual tolerance for eigen-decompositions and identities.
    const RESIDUAL_TOL: f64;
    /// Machine epsilon as `f64`.
    const EPS: f64;

    /// Converts an `f64` literal. Values outside the range saturate to infinity.
    #[inline]
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 is representable")
    }

    #[inline]
    fn of_usize(x: usize) -> Self {
        Self::of(x as f64)
    }

    #[inline]
    fn to64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("scalar converts to f64")
    }

    #[inline]
    fn finite(self) -> bool {
        self.to64().is_finite()
    }
}

impl Scalar for f64 {
    const SYMMETRY_TOL: f64 = 1e-12;
    const RESIDUAL_TOL: f64 = 1e-8;
    const EPS: f64 = f64::EPSILON;
}

impl Scalar for f32 {
    const SYMMETRY_TOL: f64 = 1e-5;
    const RESIDUAL_TOL: f64 = 1e-3;
    const EPS: f64 = f32::EPSILON as f64;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        assert_eq!(f64::of(0.25).to64(), 0.25);
        assert_eq!(f32::of(0.25).to64(), 0.25);
        assert!(!f64::of(f64::INFINITY).finite());
    }
}
