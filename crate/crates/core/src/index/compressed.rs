use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::line::{cis, LineOperator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specops::{cayley, SymMatrix};

/// A section singular value counts as zero below this fraction of
/// min(1, min_θ σ_min(symbol)). The true null directions decay geometrically
/// with the window while the rest stay near that floor.
pub const NULL_FRACTION: f64 = 0.5;

/// Circle samples used to bound the symbol away from zero.
pub const SYMBOL_SAMPLES: usize = 1024;

/// Symbols whose smallest singular value falls below this are treated as
/// not invertible.
pub const SINGULAR_SYMBOL_TOL: f64 = 1e-8;

/// Stabilized index, or `"unstable"` when the last three windows disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilized {
    Index(i64),
    Unstable,
}

impl Stabilized {
    pub fn value(self) -> Option<i64> {
        match self {
            Stabilized::Index(k) => Some(k),
            Stabilized::Unstable => None,
        }
    }
}

impl fmt::Display for Stabilized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilized::Index(k) => write!(f, "{k}"),
            Stabilized::Unstable => f.write_str("unstable"),
        }
    }
}

impl Serialize for Stabilized {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Stabilized::Index(k) => s.serialize_i64(*k),
            Stabilized::Unstable => s.serialize_str("unstable"),
        }
    }
}

impl<'de> Deserialize<'de> for Stabilized {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Stabilized::Index)
                .ok_or_else(|| serde::de::Error::custom("index must be an integer")),
            serde_json::Value::String(s) if s == "unstable" => Ok(Stabilized::Unstable),
            other => Err(serde::de::Error::custom(format!("unexpected stabilized index {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowCount {
    pub window: usize,
    pub kernel: usize,
    pub cokernel: usize,
    /// Near-null vectors discarded because they sit at the section edges.
    pub edge_artifacts: usize,
    pub smallest_singular: f64,
    /// Singular values below this counted as zero.
    pub null_threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowIndexResult {
    pub windows: Vec<usize>,
    pub per_window: Vec<WindowCount>,
    pub stabilized_index: Stabilized,
}

impl WindowIndexResult {
    fn from_counts(per_window: Vec<WindowCount>) -> Self {
        let idx: Vec<i64> = per_window
            .iter()
            .map(|w| w.kernel as i64 - w.cokernel as i64)
            .collect();
        let stabilized_index = match idx.as_slice() {
            [.., a, b, c] if a == b && b == c => Stabilized::Index(*c),
            _ => Stabilized::Unstable,
        };
        WindowIndexResult {
            windows: per_window.iter().map(|w| w.window).collect(),
            per_window,
            stabilized_index,
        }
    }
}

/// Counts near-null right (kernel) and left (cokernel) singular vectors of
/// a section on indices −L..=L whose mass is mostly inside |n| ≤ W/2.
fn count_section<T: Scalar>(m: DMatrix<Complex<T>>, window: usize, threshold: T) -> Result<WindowCount> {
    let n = m.nrows();
    let half = (n as i64 - 1) / 2;
    let svd = m.svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(Error::numerical("section SVD", f64::INFINITY)),
    };
    let sv = &svd.singular_values;
    let top = sv.iter().fold(T::zero(), |a, &x| a.max(x));
    if top == T::zero() {
        return Err(Error::invalid("operator section vanishes"));
    }
    let tol = threshold;
    let null: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] < tol).collect();
    // Square section: the left and right null spaces have equal dimension.
    // Split each into its central and edge parts through the eigenvalues of
    // the outer-mass form Q* E Q, which is robust to any rotation of the
    // null basis returned by the SVD.
    let outer = |i: usize| (i as i64 - half).unsigned_abs() as usize > window / 2;
    let central_dim = |q: DMatrix<Complex<T>>| -> usize {
        let mut e = q.clone();
        for i in 0..n {
            if !outer(i) {
                e.row_mut(i).fill(Complex::new(T::zero(), T::zero()));
            }
        }
        let form = q.adjoint() * e;
        let form = (&form + form.adjoint()) * Complex::new(T::of(0.5), T::zero());
        form.symmetric_eigenvalues()
            .iter()
            .filter(|&&x| x < T::of(0.5))
            .count()
    };
    let right = DMatrix::from_fn(n, null.len(), |i, c| vt[(null[c], i)].conj());
    let left = DMatrix::from_fn(n, null.len(), |i, c| u[(i, null[c])]);
    let kernel = if null.is_empty() { 0 } else { central_dim(right) };
    let cokernel = if null.is_empty() { 0 } else { central_dim(left) };
    let edge = 2 * null.len() - kernel - cokernel;
    let smallest = sv.iter().fold(top, |a, &x| a.min(x));
    Ok(WindowCount {
        window,
        kernel,
        cokernel,
        edge_artifacts: edge,
        smallest_singular: smallest.to64(),
        null_threshold: threshold.to64(),
    })
}

/// T = ψ₋ + ψ₊U on a section −L..=L (ψ₊ projects onto n ≥ 0).
fn compression<T: Scalar>(u: &DMatrix<Complex<T>>, lo: i64) -> DMatrix<Complex<T>> {
    let mut t = u.clone();
    for i in 0..t.nrows() {
        if lo + (i as i64) < 0 {
            for j in 0..t.ncols() {
                t[(i, j)] = if i == j {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                };
            }
        }
    }
    t
}

fn check_windows(windows: &[usize], band: usize) -> Result<()> {
    if windows.is_empty() {
        return Err(Error::invalid("no windows given"));
    }
    if let Some(w) = windows.iter().find(|&&w| w <= 4 * band) {
        return Err(Error::invalid(format!("window {w} must exceed four times the band {band}")));
    }
    if windows.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::invalid("windows must be strictly increasing"));
    }
    Ok(())
}

/// min(1, min_θ σ_min(symbol)) · fraction; errors if the symbol is not
/// invertible on the sample grid.
fn null_threshold<T: Scalar>(u: &LineOperator<T>, fraction: f64) -> Result<T> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid(format!("null fraction {fraction} must lie in (0, 1)")));
    }
    let floor = symbol_samples(u, SYMBOL_SAMPLES)
        .into_iter()
        .map(|m| m.singular_values().iter().fold(T::max_value().unwrap(), |a, &x| a.min(x)))
        .fold(T::max_value().unwrap(), |a, x| a.min(x));
    if floor < T::of(SINGULAR_SYMBOL_TOL) {
        return Err(Error::invalid(format!(
            "symbol is not invertible (smallest singular value {floor} on the circle)"
        )));
    }
    Ok(floor.min(T::one()) * T::of(fraction))
}

/// dim ker − dim coker of ψ₋ + ψ₊U, read off sections on [−W − 2b, W + 2b]
/// with null vectors at the section edges discarded; stabilized once the
/// last three windows agree.
pub fn compressed_index<T: Scalar>(u: &LineOperator<T>, windows: &[usize]) -> Result<WindowIndexResult> {
    compressed_index_with(u, windows, NULL_FRACTION)
}

/// [`compressed_index`] with an explicit null fraction.
pub fn compressed_index_with<T: Scalar>(
    u: &LineOperator<T>,
    windows: &[usize],
    null_fraction: f64,
) -> Result<WindowIndexResult> {
    let b = u.band();
    check_windows(windows, b)?;
    let threshold = null_threshold(u, null_fraction)?;
    let per = windows
        .iter()
        .map(|&w| {
            let l = (w + 2 * b) as i64;
            count_section(compression(&u.section(-l, l), -l), w, threshold)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WindowIndexResult::from_counts(per))
}

/// Winding number of det(symbol) over a uniform circle grid.
pub fn winding_number<T: Scalar>(samples: &[DMatrix<Complex<T>>]) -> Result<i64> {
    if samples.len() < 3 {
        return Err(Error::invalid("need at least three symbol samples"));
    }
    let dets: Vec<Complex<T>> = samples.iter().map(|m| m.clone().determinant()).collect();
    if let Some(i) = dets.iter().position(|d| d.norm_sqr() == T::zero() || !d.re.finite()) {
        return Err(Error::invalid(format!("symbol is singular at sample {i}")));
    }
    let quarter = T::frac_pi_2();
    let mut total = T::zero();
    for i in 0..dets.len() {
        let q = dets[(i + 1) % dets.len()] / dets[i];
        let step = q.im.atan2(q.re);
        if step.abs() >= quarter {
            return Err(Error::Resolution(format!(
                "argument jumps by {step} between samples {i} and {}",
                (i + 1) % dets.len()
            )));
        }
        total += step;
    }
    Ok((total / T::two_pi()).round().to64() as i64)
}

/// Symbol samples of a line operator at θ_j = 2πj/count.
pub fn symbol_samples<T: Scalar>(u: &LineOperator<T>, count: usize) -> Vec<DMatrix<Complex<T>>> {
    (0..count)
        .map(|j| u.symbol(T::two_pi() * T::of_usize(j) / T::of_usize(count)))
        .collect()
}

/// Self-adjoint operator whose Cayley transform enters the compression.
#[derive(Clone, Debug)]
pub enum PmModel<T: Scalar> {
    /// Real symmetric banded line operator; each window takes the dense
    /// Cayley transform of its finite section.
    Banded(LineOperator<T>),
    /// Translation-invariant multiplier d(θ) in `copies` orthogonal copies;
    /// the Cayley symbol (d − i)/(d + i) is expanded in Fourier modes on
    /// `samples` midpoints and truncated where coefficients fall below 1e-12.
    Symbol {
        d: fn(T) -> T,
        samples: usize,
        copies: usize,
    },
}

/// The discrete momentum multiplier −cot(θ/2), whose Cayley symbol is e^{iθ}.
pub fn momentum_symbol<T: Scalar>(theta: T) -> T {
    -(theta * T::of(0.5)).tan().recip()
}

fn cayley_line<T: Scalar>(d: fn(T) -> T, samples: usize) -> Result<LineOperator<T>> {
    let i = Complex::new(T::zero(), T::one());
    let vals: Vec<Complex<T>> = (0..samples)
        .map(|j| {
            let th = T::two_pi() * (T::of_usize(j) + T::of(0.5)) / T::of_usize(samples);
            let x = Complex::new(d(th), T::zero());
            (x - i) / (x + i)
        })
        .collect();
    let mut coeffs = Vec::new();
    let half = samples as i64 / 2;
    for k in -half..half {
        let c = vals.iter().enumerate().fold(Complex::new(T::zero(), T::zero()), |s, (j, v)| {
            let th = T::two_pi() * (T::of_usize(j) + T::of(0.5)) / T::of_usize(samples);
            s + *v * cis(-th * T::of(k as f64))
        }) / T::of_usize(samples);
        if c.norm_sqr().sqrt() > T::of(1e-12) {
            coeffs.push((k, c));
        }
    }
    if coeffs.is_empty() {
        return Err(Error::numerical("Cayley symbol expansion", 0.0));
    }
    Ok(LineOperator::shift_polynomial(&coeffs))
}

/// Index of ψ₋ + ψ₊·cayley(D). Convention: index = dim ker − dim coker, so
/// the shift has index −1; no further sign is applied.
pub fn pm_index<T: Scalar>(model: &PmModel<T>, windows: &[usize]) -> Result<WindowIndexResult> {
    pm_index_with(model, windows, NULL_FRACTION)
}

/// [`pm_index`] with an explicit null fraction.
pub fn pm_index_with<T: Scalar>(model: &PmModel<T>, windows: &[usize], null_fraction: f64) -> Result<WindowIndexResult> {
    if !(null_fraction > 0.0 && null_fraction < 1.0) {
        return Err(Error::invalid(format!("null fraction {null_fraction} must lie in (0, 1)")));
    }
    match model {
        PmModel::Symbol { d, samples, copies } => {
            if *copies == 0 {
                return Err(Error::invalid("copies must be at least 1"));
            }
            let one = cayley_line(*d, *samples)?;
            let mut u = one.clone();
            for _ in 1..*copies {
                u = u.direct_sum(&one);
            }
            compressed_index_with(&u, windows, null_fraction)
        }
        PmModel::Banded(d) => {
            let b = d.band();
            check_windows(windows, b)?;
            let per = windows
                .iter()
                .map(|&w| {
                    let l = (w + 2 * b) as i64;
                    let sec = d.section(-l, l);
                    if sec.iter().any(|z| z.im != T::zero()) {
                        return Err(Error::invalid("banded model must have real coefficients"));
                    }
                    let sym = SymMatrix::new(sec.map(|z| z.re))?;
                    // Cayley transforms are unitary, so the floor is 1.
                    count_section(compression(&cayley(&sym)?, -l), w, T::of(null_fraction))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WindowIndexResult::from_counts(per))
        }
    }
}
