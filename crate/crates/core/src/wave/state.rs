use std::io::{Read, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Values below this magnitude do not count toward the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Two-component field sampled at x₀ + (offset + j)·h.
///
/// Positions are tracked by the integer `offset`, so translations by whole
/// cells never round.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorGridState<T: Scalar> {
    pub x0: T,
    pub h: T,
    pub offset: i64,
    pub plus: Vec<Complex<T>>,
    pub minus: Vec<Complex<T>>,
}

impl<T: Scalar> SpinorGridState<T> {
    pub fn new(x0: T, h: T, offset: i64, plus: Vec<Complex<T>>, minus: Vec<Complex<T>>) -> Result<Self> {
        if !(h > T::zero()) || !h.finite() || !x0.finite() {
            return Err(Error::invalid(format!("grid step h = {h} must be positive, x0 = {x0} finite")));
        }
        if plus.len() != minus.len() {
            return Err(Error::invalid(format!(
                "components have {} and {} samples",
                plus.len(),
                minus.len()
            )));
        }
        if plus.iter().chain(&minus).any(|z| !z.re.finite() || !z.im.finite()) {
            return Err(Error::invalid("state has non-finite samples"));
        }
        Ok(SpinorGridState {
            x0,
            h,
            offset,
            plus,
            minus,
        })
    }

    /// Scalar field on [0, 1) with N = values.len() cells, h = 1/N, stored
    /// in the `plus` component.
    pub fn unit_interval(values: Vec<Complex<T>>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::invalid("empty state"));
        }
        let zeros = vec![Complex::new(T::zero(), T::zero()); n];
        Self::new(T::zero(), T::one() / T::of_usize(n), 0, values, zeros)
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn position(&self, global: i64) -> T {
        self.x0 + T::of(global as f64) * self.h
    }

    /// Value pair at a global index (zero off the stored window).
    pub fn at(&self, global: i64) -> (Complex<T>, Complex<T>) {
        let j = global - self.offset;
        if j < 0 || j as usize >= self.len() {
            let z = Complex::new(T::zero(), T::zero());
            return (z, z);
        }
        (self.plus[j as usize], self.minus[j as usize])
    }

    /// Smallest global index range holding every sample above the threshold.
    pub fn support_indices(&self) -> Option<(i64, i64)> {
        let thr = T::of(SUPPORT_THRESHOLD);
        let live = |j: usize| self.plus[j].norm_sqr().sqrt() > thr || self.minus[j].norm_sqr().sqrt() > thr;
        let lo = (0..self.len()).find(|&j| live(j))?;
        let hi = (0..self.len()).rev().find(|&j| live(j))?;
        Some((self.offset + lo as i64, self.offset + hi as i64))
    }

    pub fn support(&self) -> Option<(T, T)> {
        self.support_indices()
            .map(|(a, b)| (self.position(a), self.position(b)))
    }

    /// Grid ℓ² norm (h Σ |u₊|² + |u₋|²)^{1/2}.
    pub fn norm(&self) -> T {
        let s = self
            .plus
            .iter()
            .chain(&self.minus)
            .fold(T::zero(), |a, z| a + z.norm_sqr());
        (s * self.h).sqrt()
    }

    /// Same grid and bit-identical values at every global index.
    pub fn same_field(&self, other: &Self) -> bool {
        if self.x0 != other.x0 || self.h != other.h {
            return false;
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.len() as i64).max(other.offset + other.len() as i64);
        (lo..hi).all(|g| self.at(g) == other.at(g))
    }

    /// CSV with header `index,re_plus,im_plus,re_minus,im_minus`; indices
    /// are global and must be consecutive.
    pub fn read_csv(src: impl Read, x0: T, h: T, name: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(src);
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        let mut first = None;
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::invalid(format!("{name}: row {}: {e}", i + 2)))?;
            if rec.len() != 5 {
                return Err(Error::invalid(format!("{name}: row {}: expected 5 columns", i + 2)));
            }
            let idx: i64 = rec[0]
                .parse()
                .map_err(|_| Error::invalid(format!("{name}: row {}: index '{}' is not an integer", i + 2, &rec[0])))?;
            let start = *first.get_or_insert(idx);
            if idx != start + i as i64 {
                return Err(Error::invalid(format!("{name}: row {}: index {idx} is not consecutive", i + 2)));
            }
            let mut v = [T::zero(); 4];
            for (k, slot) in v.iter_mut().enumerate() {
                *slot = rec[k + 1].parse::<f64>().map(T::of).map_err(|_| {
                    Error::invalid(format!("{name}: row {}, column {}: '{}' is not a number", i + 2, k + 2, &rec[k + 1]))
                })?;
            }
            plus.push(Complex::new(v[0], v[1]));
            minus.push(Complex::new(v[2], v[3]));
        }
        Self::new(x0, h, first.unwrap_or(0), plus, minus)
    }

    pub fn write_csv(&self, dst: impl Write) -> Result<()> {
        let err = |e: csv::Error| Error::invalid(format!("writing state CSV: {e}"));
        let mut w = csv::Writer::from_writer(dst);
        w.write_record(["index", "re_plus", "im_plus", "re_minus", "im_minus"])
            .map_err(err)?;
        for j in 0..self.len() {
            let (p, m) = (self.plus[j], self.minus[j]);
            w.write_record([
                (self.offset + j as i64).to_string(),
                format!("{:e}", p.re.to64()),
                format!("{:e}", p.im.to64()),
                format!("{:e}", m.re.to64()),
                format!("{:e}", m.im.to64()),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| Error::invalid(format!("writing state CSV: {e}")))
    }
}
