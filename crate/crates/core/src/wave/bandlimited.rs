use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::evolve::grid_steps;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Periodic grid of `points` cells of width h, on which e^{itD} is the
/// translation (u ↦ u(· + t)) and D has eigenvalues 2πk/(N h).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TranslationModel<T: Scalar> {
    pub points: usize,
    pub h: T,
}

impl<T: Scalar> TranslationModel<T> {
    /// Eigenvalues ξ_k = 2πk/(Nh), k ∈ (−N/2, N/2], in the order k = 0..N
    /// taken mod N.
    pub fn frequencies(&self) -> Vec<T> {
        let n = self.points as i64;
        (0..n)
            .map(|k| {
                let k = if 2 * k > n { k - n } else { k };
                T::two_pi() * T::of(k as f64) / (T::of_usize(self.points) * self.h)
            })
            .collect()
    }
}

/// Samples (t_j, f̂(t_j)) of a Fourier transform supported in [−R, R],
/// combined with weight Δt.
#[derive(Clone, Debug, PartialEq)]
pub struct BandlimitedInput<T: Scalar> {
    pub radius: T,
    pub step: T,
    pub nodes: Vec<(T, Complex<T>)>,
}

impl<T: Scalar> BandlimitedInput<T> {
    /// Nodes t_j = −R + jΔt for j = 0..=2R/Δt.
    pub fn sampled(radius: T, step: T, fhat: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let m = grid_steps(T::of(2.0) * radius, step)?;
        if m < 0 {
            return Err(Error::invalid("radius must be nonnegative"));
        }
        let nodes = (0..=m)
            .map(|j| {
                let t = -radius + step * T::of(j as f64);
                (t, fhat(t))
            })
            .collect();
        Ok(BandlimitedInput { radius, step, nodes })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    /// Largest circular |i − j| with a nonzero entry.
    pub band: usize,
    /// ⌊R/h⌋: no shift used can be longer.
    pub shift_bound: usize,
    /// c_D·R/h + 1 with unit speed.
    pub cell_bound: f64,
    pub certified: bool,
}

/// f(D) ≈ (2π)^{−1/2} Σ f̂(t_j) e^{i t_j D} Δt, assembled from exact shifts.
pub fn bandlimited_calculus<T: Scalar>(
    model: &TranslationModel<T>,
    input: &BandlimitedInput<T>,
) -> Result<(DMatrix<Complex<T>>, BandReport)> {
    let n = model.points;
    if n == 0 {
        return Err(Error::invalid("model has no grid points"));
    }
    if input.radius < T::zero() || !(input.step > T::zero()) {
        return Err(Error::invalid("radius must be nonnegative and step positive"));
    }
    let shift_bound = grid_steps(input.radius, model.h)
        .map_err(|_| Error::invalid("radius is not a multiple of the grid step"))? as usize;
    if 2 * shift_bound >= n {
        return Err(Error::invalid(format!(
            "shifts up to {shift_bound} cells wrap around a grid of {n} points"
        )));
    }
    let tol = T::of(1e-9) * model.h;
    let weight = input.step / T::two_pi().sqrt();
    let mut m = DMatrix::from_element(n, n, Complex::new(T::zero(), T::zero()));
    for (idx, &(t, v)) in input.nodes.iter().enumerate() {
        if v == Complex::new(T::zero(), T::zero()) {
            continue;
        }
        if t.abs() > input.radius + tol {
            return Err(Error::invalid(format!(
                "nodes[{idx}]: f̂({t}) is nonzero outside [−{0}, {0}]",
                input.radius
            )));
        }
        let s = grid_steps(t, model.h).map_err(|_| {
            Error::invalid(format!("nodes[{idx}]: t = {t} is not a multiple of the grid step"))
        })?;
        for i in 0..n {
            let j = (i as i64 + s).rem_euclid(n as i64) as usize;
            m[(i, j)] += v * weight;
        }
    }
    let mut band = 0;
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)] != Complex::new(T::zero(), T::zero()) {
                let d = i.abs_diff(j);
                band = band.max(d.min(n - d));
            }
        }
    }
    let report = BandReport {
        band,
        shift_bound,
        cell_bound: (input.radius / model.h).to64() + 1.0,
        certified: band <= shift_bound,
    };
    Ok((m, report))
}

/// Bound on max_k |quadrature(ξ_k) − f(ξ_k)| over the model's eigenvalues.
///
/// With nodes on the lattice Δtℤ and f̂ ∈ C⁴ vanishing at ±R, Poisson
/// summation makes the error Σ_{n≠0} f(ξ − 2πn/Δt), and |f(η)| is at most
/// min(‖f̂‖₁, ‖f̂⁗‖₁/η⁴)/√(2π).
pub fn aliasing_error_bound<T: Scalar>(model: &TranslationModel<T>, step: T, l1: T, l1_fourth: T) -> T {
    let (dt, pi) = (step.to64(), std::f64::consts::PI);
    let a0 = l1.to64() / (2.0 * pi).sqrt();
    let a4 = l1_fourth.to64() / (2.0 * pi).sqrt();
    let worst = model
        .frequencies()
        .into_iter()
        .map(|xi| {
            let xi = xi.to64();
            let nmax = (xi.abs() * dt / pi).ceil() as i64 + 64;
            let near: f64 = (-nmax..=nmax)
                .filter(|&k| k != 0)
                .map(|k| {
                    let eta = (xi - 2.0 * pi * k as f64 / dt).abs();
                    a0.min(a4 / eta.powi(4))
                })
                .sum();
            near + 2.0 * a4 * (dt / pi).powi(4) / (3.0 * (nmax as f64).powi(3))
        })
        .fold(0.0, f64::max);
    T::of(worst)
}
