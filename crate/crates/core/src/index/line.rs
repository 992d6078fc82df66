use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Banded operator on ℓ²(ℤ): U = Σ_k c_k(n) S^k with (S x)_n = x_{n−1}, so
/// the entry U[n, n−k] is c_k(n). Each diagonal is periodic in the row
/// index n with period `values.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineOperator<T: Scalar> {
    band: usize,
    diagonals: BTreeMap<i64, Vec<Complex<T>>>,
}

/// A coefficient in JSON: a real number or `[re, im]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

/// `{"band": b, "diagonals": {"k": [c_k(0), c_k(1), …]}}`; a bare number
/// stands for a constant diagonal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineOperatorFile {
    pub band: usize,
    pub diagonals: BTreeMap<String, DiagonalSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagonalSpec {
    Constant(Coefficient),
    Periodic(Vec<Coefficient>),
}

/// e^{iθ}.
pub(crate) fn cis<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

impl<T: Scalar> LineOperator<T> {
    pub fn new(band: usize, diagonals: BTreeMap<i64, Vec<Complex<T>>>) -> Result<Self> {
        for (k, vals) in &diagonals {
            if k.unsigned_abs() as usize > band {
                return Err(Error::invalid(format!(
                    "diagonal {k} lies outside the declared band {band}"
                )));
            }
            if vals.is_empty() {
                return Err(Error::invalid(format!("diagonal {k} has no values")));
            }
            if vals.iter().any(|z| !z.re.finite() || !z.im.finite()) {
                return Err(Error::invalid(format!("diagonal {k} has non-finite values")));
            }
        }
        Ok(LineOperator { band, diagonals })
    }

    /// Translation-invariant Σ c_k S^k.
    pub fn shift_polynomial(coeffs: &[(i64, Complex<T>)]) -> Self {
        let mut d: BTreeMap<i64, Vec<Complex<T>>> = BTreeMap::new();
        for &(k, c) in coeffs {
            let e = d.entry(k).or_insert_with(|| vec![Complex::new(T::zero(), T::zero())]);
            e[0] += c;
        }
        let band = d.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0);
        LineOperator { band, diagonals: d }
    }

    /// S^k.
    pub fn shift(k: i64) -> Self {
        Self::shift_polynomial(&[(k, Complex::new(T::one(), T::zero()))])
    }

    pub fn identity() -> Self {
        Self::shift(0)
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn diagonals(&self) -> &BTreeMap<i64, Vec<Complex<T>>> {
        &self.diagonals
    }

    /// Common period of all diagonals.
    pub fn period(&self) -> usize {
        self.diagonals.values().fold(1, |p, v| p.lcm(&v.len()))
    }

    /// U[n, m].
    pub fn entry(&self, n: i64, m: i64) -> Complex<T> {
        match self.diagonals.get(&(n - m)) {
            Some(v) => v[n.rem_euclid(v.len() as i64) as usize],
            None => Complex::new(T::zero(), T::zero()),
        }
    }

    /// U ⊕ V realized on ℤ by interleaving: U on even sites, V on odd ones.
    /// Both ψ₊ projections are preserved, since 2n and 2n + 1 are ≥ 0
    /// exactly when n is.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let p = 2 * self.period().lcm(&other.period());
        let mut d: BTreeMap<i64, Vec<Complex<T>>> = BTreeMap::new();
        let zero = Complex::new(T::zero(), T::zero());
        for (src, parity) in [(self, 0i64), (other, 1i64)] {
            for (&k, vals) in &src.diagonals {
                let e = d.entry(2 * k).or_insert_with(|| vec![zero; p]);
                for r in 0..p as i64 {
                    if r.rem_euclid(2) == parity {
                        let n = (r - parity) / 2;
                        e[r as usize] = vals[n.rem_euclid(vals.len() as i64) as usize];
                    }
                }
            }
        }
        LineOperator {
            band: 2 * self.band.max(other.band),
            diagonals: d,
        }
    }

    /// Block symbol Σ_K B_K e^{iKθ} for cells of `period` sites:
    /// B_K[a][b] = U[KP + a, b].
    pub fn symbol(&self, theta: T) -> DMatrix<Complex<T>> {
        let p = self.period() as i64;
        let reach = (self.band as i64) / p + 1;
        DMatrix::from_fn(p as usize, p as usize, |a, b| {
            (-reach..=reach).fold(Complex::new(T::zero(), T::zero()), |s, kk| {
                let phase = cis(theta * T::of(kk as f64));
                s + self.entry(kk * p + a as i64, b as i64) * phase
            })
        })
    }

    /// Dense section on indices lo..=hi.
    pub fn section(&self, lo: i64, hi: i64) -> DMatrix<Complex<T>> {
        let n = (hi - lo + 1) as usize;
        DMatrix::from_fn(n, n, |i, j| self.entry(lo + i as i64, lo + j as i64))
    }

    pub fn from_file(f: &LineOperatorFile) -> Result<Self> {
        let cx = |c: &Coefficient| match *c {
            Coefficient::Real(x) => Complex::new(T::of(x), T::zero()),
            Coefficient::Complex([re, im]) => Complex::new(T::of(re), T::of(im)),
        };
        let mut d = BTreeMap::new();
        for (key, spec) in &f.diagonals {
            let k: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("diagonals: key '{key}' is not an integer offset")))?;
            let vals = match spec {
                DiagonalSpec::Constant(c) => vec![cx(c)],
                DiagonalSpec::Periodic(v) => v.iter().map(cx).collect(),
            };
            d.insert(k, vals);
        }
        Self::new(f.band, d).map_err(|e| match e {
            Error::InvalidInput(m) => Error::invalid(format!("diagonals: {m}")),
            other => other,
        })
    }

    pub fn to_file(&self) -> LineOperatorFile {
        let co = |z: &Complex<T>| {
            if z.im == T::zero() {
                Coefficient::Real(z.re.to64())
            } else {
                Coefficient::Complex([z.re.to64(), z.im.to64()])
            }
        };
        LineOperatorFile {
            band: self.band,
            diagonals: self
                .diagonals
                .iter()
                .map(|(k, v)| (k.to_string(), DiagonalSpec::Periodic(v.iter().map(co).collect())))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: LineOperatorFile = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("line operator JSON: {e}")))?;
        Self::from_file(&f)
    }
}
