use super::chebyshev::{chebyshev_coefficients, chebyshev_eval};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Odd continuous χ: ℝ → [−1, 1] with χ(+∞) = 1.
///
/// `SmoothSign` and `ChebyshevSign` are exactly ±1 outside (−gap, gap);
/// `ScaledArctan` never reaches ±1 and so is admissible for no gap.
#[derive(Clone, Debug, PartialEq)]
pub enum NormalizingFunction<T: Scalar> {
    SmoothSign { gap: T },
    ScaledArctan { scale: T },
    ChebyshevSign { degree: usize, gap: T, coeffs: Vec<T> },
}

/// C^∞ step on [0, 1]: 0 below, 1 above, s(1 − u) = 1 − s(u).
fn smooth_step<T: Scalar>(u: T) -> T {
    let psi = |v: T| {
        if v > T::zero() {
            (-v.recip()).exp()
        } else {
            T::zero()
        }
    };
    let (p, q) = (psi(u), psi(T::one() - u));
    p / (p + q)
}

fn smooth_sign<T: Scalar>(x: T, c: T) -> T {
    if x < T::zero() {
        return -smooth_sign(-x, c);
    }
    if x >= c {
        T::one()
    } else {
        T::of(2.0) * smooth_step((x + c) / (T::of(2.0) * c)) - T::one()
    }
}

impl<T: Scalar> NormalizingFunction<T> {
    pub fn smooth_sign(gap: T) -> Result<Self> {
        check_gap(gap)?;
        Ok(NormalizingFunction::SmoothSign { gap })
    }

    pub fn scaled_arctan(scale: T) -> Result<Self> {
        check_gap(scale)?;
        Ok(NormalizingFunction::ScaledArctan { scale })
    }

    /// Degree-k Chebyshev interpolant of the smooth sign on [−gap, gap],
    /// corrected by a linear term so it meets ±1 at ±gap, clamped to [−1, 1].
    pub fn chebyshev_sign(degree: usize, gap: T) -> Result<Self> {
        check_gap(gap)?;
        if degree == 0 {
            return Err(Error::invalid("Chebyshev sign needs degree at least 1"));
        }
        let coeffs = chebyshev_coefficients(|x| smooth_sign(x, gap), degree, -gap, gap);
        Ok(NormalizingFunction::ChebyshevSign { degree, gap, coeffs })
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalizingFunction::SmoothSign { .. } => "smooth-sign",
            NormalizingFunction::ScaledArctan { .. } => "scaled-arctan",
            NormalizingFunction::ChebyshevSign { .. } => "chebyshev-sign",
        }
    }

    pub fn eval(&self, x: T) -> T {
        match self {
            NormalizingFunction::SmoothSign { gap } => smooth_sign(x, *gap),
            NormalizingFunction::ScaledArctan { scale } => {
                T::of(2.0) / T::pi() * (x / *scale).atan()
            }
            NormalizingFunction::ChebyshevSign { gap, coeffs, .. } => {
                let c = *gap;
                if x.abs() >= c {
                    return x.signum();
                }
                let end = chebyshev_eval(coeffs, c, -c, c);
                let p = |y: T| chebyshev_eval(coeffs, y, -c, c) + (T::one() - end) * y / c;
                // Odd part only, so oddness is exact in floating point.
                let v = (p(x) - p(-x)) * T::of(0.5);
                v.max(-T::one()).min(T::one())
            }
        }
    }

    /// Whether 1 − χ² vanishes outside (−c, c).
    pub fn admissible_for(&self, c: T) -> bool {
        match self {
            NormalizingFunction::SmoothSign { gap } | NormalizingFunction::ChebyshevSign { gap, .. } => {
                *gap <= c
            }
            NormalizingFunction::ScaledArctan { .. } => false,
        }
    }
}

fn check_gap<T: Scalar>(c: T) -> Result<()> {
    if c > T::zero() && c.finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("parameter {c} must be positive and finite")))
    }
}
