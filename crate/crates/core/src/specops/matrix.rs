use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest entry magnitude, ‖A‖_max.
pub fn max_abs<T: Scalar>(m: &DMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
}

fn check_finite<T: Scalar>(m: &DMatrix<T>, what: &str) -> Result<()> {
    match m.iter().position(|x| !x.finite()) {
        Some(k) => Err(Error::invalid(format!(
            "{what}: entry ({}, {}) is not finite",
            k % m.nrows(),
            k / m.nrows()
        ))),
        None => Ok(()),
    }
}

/// Real symmetric matrix. Construction checks ‖A − Aᵀ‖_max against the
/// relative tolerance and then stores the exact symmetrization.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T: Scalar> {
    m: DMatrix<T>,
    tol: f64,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn new(m: DMatrix<T>) -> Result<Self> {
        Self::with_tolerance(m, T::SYMMETRY_TOL)
    }

    pub fn with_tolerance(m: DMatrix<T>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::invalid(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::invalid("matrix has order 0"));
        }
        check_finite(&m, "matrix")?;
        let skew = max_abs(&(&m - m.transpose()));
        let scale = max_abs(&m);
        if skew > T::of(tol) * scale {
            return Err(Error::invalid(format!(
                "matrix is not symmetric: ‖A − Aᵀ‖_max = {} exceeds {tol:e}·‖A‖_max",
                skew
            )));
        }
        let half = T::of(0.5);
        let m = (&m + m.transpose()) * half;
        Ok(SymMatrix { m, tol })
    }

    pub fn from_diagonal(d: &[T]) -> Self {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d));
        SymMatrix {
            m,
            tol: T::SYMMETRY_TOL,
        }
    }

    pub fn from_row_slice(n: usize, entries: &[T]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "{} entries for a matrix of order {n}",
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn order(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.m
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Block diagonal A ⊕ B.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (p, q) = (self.order(), other.order());
        let mut m = DMatrix::zeros(p + q, p + q);
        m.view_mut((0, 0), (p, p)).copy_from(&self.m);
        m.view_mut((p, p), (q, q)).copy_from(&other.m);
        SymMatrix { m, tol: self.tol }
    }

    /// A + σI.
    pub fn shifted(&self, sigma: T) -> Self {
        let mut m = self.m.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += sigma;
        }
        SymMatrix { m, tol: self.tol }
    }
}

/// Square matrix whose entries vanish for |i − j| > band.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedMatrix<T: Scalar> {
    m: DMatrix<T>,
    band: usize,
}

impl<T: Scalar> BandedMatrix<T> {
    pub fn new(m: DMatrix<T>, band: usize) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::invalid("banded matrix must be square"));
        }
        check_finite(&m, "banded matrix")?;
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if i.abs_diff(j) > band && m[(i, j)] != T::zero() {
                    return Err(Error::invalid(format!(
                        "entry ({i}, {j}) lies outside the declared band {band}"
                    )));
                }
            }
        }
        Ok(BandedMatrix { m, band })
    }

    /// Builds from `(offset, entries)` pairs; offset k > 0 is above the main
    /// diagonal. Short lists are zero padded.
    pub fn from_diagonals(n: usize, offsets: &[(i64, Vec<T>)]) -> Result<Self> {
        let mut m = DMatrix::zeros(n, n);
        let mut band = 0;
        for (off, vals) in offsets {
            let k = off.unsigned_abs() as usize;
            if k >= n.max(1) && vals.iter().any(|v| *v != T::zero()) {
                return Err(Error::invalid(format!("diagonal offset {off} exceeds order {n}")));
            }
            if vals.len() > n - k.min(n) {
                return Err(Error::invalid(format!(
                    "diagonal {off} has {} entries, at most {} fit",
                    vals.len(),
                    n - k.min(n)
                )));
            }
            for (p, &v) in vals.iter().enumerate() {
                let (i, j) = if *off >= 0 { (p, p + k) } else { (p + k, p) };
                m[(i, j)] = v;
            }
            band = band.max(k);
        }
        Self::new(m, band)
    }

    /// Toeplitz matrix Σ c_k S^k truncated to order n, with (S x)_i = x_{i−1}:
    /// coefficient c_k sits on the sub-diagonal at offset −k.
    pub fn toeplitz(n: usize, coeffs: &[(i64, T)]) -> Result<Self> {
        let mut m = DMatrix::zeros(n, n);
        let mut band = 0usize;
        for &(k, c) in coeffs {
            band = band.max(k.unsigned_abs() as usize);
            for i in 0..n as i64 {
                let j = i - k;
                if (0..n as i64).contains(&j) {
                    m[(i as usize, j as usize)] += c;
                }
            }
        }
        Self::new(m, band)
    }

    pub fn order(&self) -> usize {
        self.m.nrows()
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    /// Smallest b with every nonzero entry inside |i − j| ≤ b.
    pub fn measured_band(&self) -> usize {
        let mut b = 0;
        for j in 0..self.m.ncols() {
            for i in 0..self.m.nrows() {
                if self.m[(i, j)] != T::zero() {
                    b = b.max(i.abs_diff(j));
                }
            }
        }
        b
    }

    pub fn to_sym(&self) -> Result<SymMatrix<T>> {
        SymMatrix::new(self.m.clone())
    }

    /// Product that only touches entries inside the combined band.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order();
        let (b1, b2) = (self.band, rhs.band);
        let band = (b1 + b2).min(n.saturating_sub(1));
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(band)..(i + band + 1).min(n) {
                let lo = i.saturating_sub(b1).max(j.saturating_sub(b2));
                let hi = (i + b1).min(j + b2).min(n - 1);
                let mut acc = T::zero();
                for k in lo..=hi {
                    acc += self.m[(i, k)] * rhs.m[(k, j)];
                }
                m[(i, j)] = acc;
            }
        }
        BandedMatrix { m, band }
    }

    pub(crate) fn from_parts(m: DMatrix<T>, band: usize) -> Self {
        debug_assert!(m.is_square());
        BandedMatrix { m, band }
    }
}
