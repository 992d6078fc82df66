use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted; the coefficients grow roughly like binomials and
/// the float boundary in [`extend_reflect`] stops being meaningful beyond it.
pub const MAX_REFLECTION_ORDER: usize = 12;

/// a₁..a_{k+1} with Σ_j a_j (−j)^i = 1 for i = 0..=k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionCoefficients {
    pub order: usize,
    pub coeffs: Vec<BigRational>,
}

impl Serialize for ReflectionCoefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReflectionCoefficients", 2)?;
        st.serialize_field("order", &self.order)?;
        let c: Vec<String> = self.coeffs.iter().map(|r| r.to_string()).collect();
        st.serialize_field("coefficients", &c)?;
        st.end()
    }
}

impl ReflectionCoefficients {
    /// Σ_j a_j (−j)^i, exactly.
    pub fn moment(&self, i: u32) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * BigRational::from_integer(BigInt::from(-(j as i64 + 1)).pow(i)))
            .fold(BigRational::zero(), |s, x| s + x)
    }

    pub fn to_float<T: Scalar>(&self) -> Vec<T> {
        self.coeffs
            .iter()
            .map(|r| T::of(r.to_f64().expect("small rational")))
            .collect()
    }
}

/// Solves the (k+1)×(k+1) Vandermonde system by exact Gaussian elimination.
pub fn reflection_coefficients(k: usize) -> Result<ReflectionCoefficients> {
    if k > MAX_REFLECTION_ORDER {
        return Err(Error::unsupported(format!(
            "order {k} exceeds {MAX_REFLECTION_ORDER}; coefficients grow combinatorially"
        )));
    }
    let n = k + 1;
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    // Row i: [(−1)^i, (−2)^i, …, (−n)^i | 1].
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (1..=n as i64)
                .map(|j| BigRational::from_integer(BigInt::from(-j).pow(i as u32)))
                .collect();
            row.push(int(1));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Vandermonde matrix with distinct nodes is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    let coeffs = a.into_iter().map(|row| row[n].clone()).collect();
    let rc = ReflectionCoefficients { order: k, coeffs };
    debug_assert!((0..n as u32).all(|i| rc.moment(i).is_one()));
    Ok(rc)
}

/// Reflected extension on the grid x_i = i·h.
#[derive(Clone, Debug, PartialEq)]
pub struct Extension<T> {
    /// Values at x_i for i = −negative..samples.len().
    pub values: Vec<T>,
    pub negative: usize,
}

impl<T: Scalar> Extension<T> {
    /// Value at grid index i (may be negative).
    pub fn at(&self, i: i64) -> T {
        self.values[(i + self.negative as i64) as usize]
    }
}

/// e(u)(−x) = Σ_j a_j u(j·x) at x = h, 2h, …, negative·h.
pub fn extend_reflect<T: Scalar>(samples: &[T], k: usize, negative: usize) -> Result<Extension<T>> {
    let a: Vec<T> = reflection_coefficients(k)?.to_float();
    let need = (k + 1) * negative;
    if negative > 0 && need >= samples.len() {
        return Err(Error::invalid(format!(
            "{negative} reflected points at order {k} need samples up to index {need}, only {} given",
            samples.len()
        )));
    }
    let mut values: Vec<T> = (1..=negative)
        .rev()
        .map(|i| {
            a.iter()
                .enumerate()
                .fold(T::zero(), |s, (j, &aj)| s + aj * samples[(j + 1) * i])
        })
        .collect();
    values.extend_from_slice(samples);
    Ok(Extension { values, negative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn r(p: i64) -> BigRational {
        Ratio::from_integer(BigInt::from(p))
    }

    /// Independent oracle: a_j = ℓ_j(1) for the Lagrange basis on nodes −1..−(k+1).
    fn lagrange(k: usize) -> Vec<BigRational> {
        let n = k as i64 + 1;
        (1..=n)
            .map(|j| {
                (1..=n).filter(|&i| i != j).fold(r(1), |acc, i| {
                    acc * Ratio::new(BigInt::from(1 + i), BigInt::from(i - j))
                })
            })
            .collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(reflection_coefficients(0).unwrap().coeffs, vec![r(1)]);
        assert_eq!(reflection_coefficients(1).unwrap().coeffs, vec![r(3), r(-2)]);
        assert_eq!(reflection_coefficients(2).unwrap().coeffs, vec![r(6), r(-8), r(3)]);
        assert!(matches!(reflection_coefficients(13), Err(Error::Unsupported(_))));
    }

    #[test]
    fn moments_exact_and_match_lagrange() {
        for k in 0..=MAX_REFLECTION_ORDER {
            let c = reflection_coefficients(k).unwrap();
            assert_eq!(c.coeffs, lagrange(k), "order {k}");
            for i in 0..=k as u32 {
                assert!(c.moment(i).is_one());
            }
        }
    }

    #[test]
    fn extension_examples() {
        let h = 0.01;
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * h).collect();
        let e = extend_reflect(&[1.0f64; 40], 4, 5).unwrap();
        assert!(e.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let e = extend_reflect(&xs, 1, 1).unwrap();
        assert!((e.at(-1) + h).abs() < 1e-15);
        let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let e = extend_reflect(&sq, 2, 1).unwrap();
        assert!((e.at(-1) - h * h).abs() < 1e-15);
        assert_eq!(e.at(3), sq[3]);
        assert!(extend_reflect(&sq, 2, 20).is_err());
    }
}
