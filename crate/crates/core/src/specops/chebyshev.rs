use nalgebra::DMatrix;

use super::matrix::BandedMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients of the degree-k Chebyshev interpolant of f on [a, b]
/// (first-kind nodes).
pub fn chebyshev_coefficients<T: Scalar>(f: impl Fn(T) -> T, k: usize, a: T, b: T) -> Vec<T> {
    let n = k + 1;
    let half = T::of(0.5);
    let (mid, rad) = ((a + b) * half, (b - a) * half);
    let pi = T::pi();
    let nodes: Vec<T> = (0..n)
        .map(|j| {
            let th = pi * (T::of_usize(j) + half) / T::of_usize(n);
            f(mid + rad * th.cos())
        })
        .collect();
    (0..n)
        .map(|m| {
            let s = nodes.iter().enumerate().fold(T::zero(), |acc, (j, &fj)| {
                let th = pi * T::of_usize(m) * (T::of_usize(j) + half) / T::of_usize(n);
                acc + fj * th.cos()
            });
            let c = s * T::of(2.0) / T::of_usize(n);
            if m == 0 {
                c * half
            } else {
                c
            }
        })
        .collect()
}

/// Clenshaw evaluation of Σ c_j T_j at x ∈ [a, b].
pub fn chebyshev_eval<T: Scalar>(c: &[T], x: T, a: T, b: T) -> T {
    let two = T::of(2.0);
    let u = (two * x - a - b) / (b - a);
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &cj in c.iter().skip(1).rev() {
        let b0 = two * u * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    u * b1 - b2 + c.first().copied().unwrap_or_else(T::zero)
}

/// Estimate of sup_{[a,b]} |f − p| from a dense uniform sample, golden
/// section refinement around the largest samples, and a rounding margin
/// for the matrix recurrence.
pub fn sup_error<T: Scalar>(f: &impl Fn(T) -> T, c: &[T], a: T, b: T) -> T {
    let err = |x: T| (f(x) - chebyshev_eval(c, x, a, b)).abs();
    let samples = (64 * c.len()).max(4000);
    let step = (b - a) / T::of_usize(samples);
    let mut vals: Vec<(T, usize)> = (0..=samples)
        .map(|i| (err(a + step * T::of_usize(i)), i))
        .collect();
    vals.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut best = vals.first().map_or(T::zero(), |v| v.0);
    let g = T::of(0.618_033_988_749_894_8);
    for &(_, i) in vals.iter().take(16) {
        let (mut lo, mut hi) = (
            a + step * T::of_usize(i.saturating_sub(1)),
            (a + step * T::of_usize(i + 1)).min(b),
        );
        for _ in 0..40 {
            let x1 = hi - g * (hi - lo);
            let x2 = lo + g * (hi - lo);
            if err(x1) >= err(x2) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        best = best.max(err((lo + hi) * T::of(0.5)));
    }
    let mass = c.iter().fold(T::zero(), |s, x| s + x.abs());
    let k = T::of_usize(c.len());
    best * T::of(1.001) + T::of(10.0 * T::EPS) * k * k * mass
}

/// Degree-k Chebyshev approximation p(B) of f(B), assembled with the
/// three-term recurrence on banded matrices so the band grows by at most
/// b per degree. The spectrum of B must lie in [a, b]; this is not checked.
pub fn chebyshev_banded<T: Scalar>(
    m: &BandedMatrix<T>,
    f: impl Fn(T) -> T,
    degree: i64,
    interval: (T, T),
) -> Result<(BandedMatrix<T>, T)> {
    if degree < 0 {
        return Err(Error::invalid(format!("degree {degree} is negative")));
    }
    let (a, b) = interval;
    if !(a < b) || !a.finite() || !b.finite() {
        return Err(Error::invalid(format!("interval [{a}, {b}] is empty or not finite")));
    }
    let k = degree as usize;
    let c = chebyshev_coefficients(&f, k, a, b);
    let n = m.order();
    let eye = BandedMatrix::from_parts(DMatrix::identity(n, n), 0);
    let two = T::of(2.0);
    let x = BandedMatrix::from_parts(
        (m.matrix() * two - DMatrix::identity(n, n) * (a + b)) / (b - a),
        m.band(),
    );
    let mut acc = eye.matrix() * c[0];
    let mut band = 0;
    if k >= 1 {
        let (mut prev, mut cur) = (eye, x.clone());
        acc += cur.matrix() * c[1];
        band = cur.band();
        for &cj in &c[2..] {
            let next_band = (cur.band() + x.band()).min(n.saturating_sub(1));
            let next = BandedMatrix::from_parts(x.mul(&cur).matrix() * two - prev.matrix(), next_band);
            acc += next.matrix() * cj;
            band = next.band();
            prev = cur;
            cur = next;
        }
    }
    let bound = sup_error(&f, &c, a, b);
    Ok((BandedMatrix::from_parts(acc, band), bound))
}
