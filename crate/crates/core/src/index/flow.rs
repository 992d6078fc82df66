use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specops::{eigensolve, operator_norm, SymMatrix};

/// Samples A(t₀), …, A(t_N) of a path on a uniform parameter grid.
#[derive(Clone, Debug)]
pub struct MatrixPath<T: Scalar> {
    pub samples: Vec<SymMatrix<T>>,
}

impl<T: Scalar> MatrixPath<T> {
    pub fn new(samples: Vec<SymMatrix<T>>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("a path needs at least two samples"));
        }
        let n = samples[0].order();
        if let Some(i) = samples.iter().position(|s| s.order() != n) {
            return Err(Error::invalid(format!("samples[{i}] has order {}, expected {n}", samples[i].order())));
        }
        Ok(MatrixPath { samples })
    }

    /// Samples of t ↦ f(t) at t_j = a + j(b − a)/steps.
    pub fn sample(a: T, b: T, steps: usize, f: impl Fn(T) -> Result<SymMatrix<T>>) -> Result<Self> {
        let pts = (0..=steps)
            .map(|j| f(a + (b - a) * T::of_usize(j) / T::of_usize(steps.max(1))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    /// This path followed by `next` (the junction sample appears once).
    pub fn concat(&self, next: &Self) -> Result<Self> {
        let mut s = self.samples.clone();
        s.extend(next.samples.iter().skip(1).cloned());
        Self::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// The crossing is completed at sample `step`.
    pub step: usize,
    /// Tracked mode, numbered by the ascending order at the first sample.
    pub index: usize,
    /// +1 upward, −1 downward.
    pub direction: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralFlowReport {
    pub flow: i64,
    pub crossings: Vec<Crossing>,
    pub warnings: Vec<String>,
}

/// Signed count of eigenvalues crossing 0. Modes are carried from sample to
/// sample by greatest eigenvector overlap, so eigenvalues passing through
/// each other keep their identity. An eigenvalue within `zero_tol` of 0
/// keeps the sign it had before, so an exact touch contributes nothing.
pub fn spectral_flow<T: Scalar>(path: &MatrixPath<T>, zero_tol: T) -> Result<SpectralFlowReport> {
    let specs = path
        .samples
        .iter()
        .map(eigensolve)
        .collect::<Result<Vec<_>>>()?;
    let last = specs.len() - 1;
    for (name, s) in [("first", &specs[0]), ("last", &specs[last])] {
        if let Some(l) = s.eigenvalues.iter().find(|l| l.abs() < zero_tol) {
            return Err(Error::invalid(format!(
                "{name} sample has eigenvalue {l} within the zero tolerance {zero_tol}"
            )));
        }
    }
    let n = specs[0].order();
    let sign = |l: T| if l > T::zero() { 1i8 } else { -1i8 };
    // mode[i] = column of the current sample carrying tracked mode i.
    let mut mode: Vec<usize> = (0..n).collect();
    let mut cur: Vec<i8> = specs[0].eigenvalues.iter().map(|&l| sign(l)).collect();
    let mut crossings = Vec::new();
    let mut warnings = Vec::new();
    for step in 1..specs.len() {
        let (prev, s) = (&specs[step - 1], &specs[step]);
        let overlap = (prev.vectors.transpose() * &s.vectors).map(|x| x.abs());
        let mut next = vec![usize::MAX; n];
        let mut taken = vec![false; n];
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        pairs.sort_by(|&(a, b), &(c, d)| {
            overlap[(c, d)]
                .partial_cmp(&overlap[(a, b)])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then((a, b).cmp(&(c, d)))
        });
        for (i, j) in pairs {
            if let Some(m) = mode.iter().position(|&c| c == i) {
                if next[m] == usize::MAX && !taken[j] {
                    next[m] = j;
                    taken[j] = true;
                }
            }
        }
        mode = next;
        let mut crossed = false;
        for (i, &col) in mode.iter().enumerate() {
            let l = s.eigenvalues[col];
            if l.abs() < zero_tol {
                continue;
            }
            let sg = sign(l);
            if sg != cur[i] {
                crossings.push(Crossing { step, index: i, direction: sg });
                cur[i] = sg;
                crossed = true;
            }
        }
        if !crossed {
            let gap = |k: usize| specs[k].eigenvalues.iter().fold(T::max_value().unwrap(), |a, x| a.min(x.abs()));
            let g = gap(step - 1).min(gap(step));
            let d = operator_norm(&(path.samples[step].matrix() - path.samples[step - 1].matrix()));
            if g > zero_tol && d >= g * T::of(0.25) {
                warnings.push(format!(
                    "step {step}: ‖ΔA‖ = {:e} is not below a quarter of the gap {:e}; a double crossing could be missed",
                    d.to64(),
                    g.to64()
                ));
            }
        }
    }
    let flow = crossings.iter().map(|c| c.direction as i64).sum();
    Ok(SpectralFlowReport { flow, crossings, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_path(f: impl Fn(f64) -> Vec<f64>, steps: usize) -> MatrixPath<f64> {
        MatrixPath::sample(0.0, 1.0, steps, |t| Ok(SymMatrix::from_diagonal(&f(t)))).unwrap()
    }

    #[test]
    fn examples() {
        let tol = 1e-9;
        assert_eq!(spectral_flow(&diag_path(|t| vec![t - 0.5], 10), tol).unwrap().flow, 1);
        assert_eq!(spectral_flow(&diag_path(|_| vec![1.0, -2.0], 4), tol).unwrap().flow, 0);
        let r = spectral_flow(&diag_path(|t| vec![t - 0.5, 0.5 - t], 10), tol).unwrap();
        assert_eq!(r.flow, 0);
        assert_eq!(r.crossings.len(), 2);
    }

    #[test]
    fn touching_zero_is_not_a_crossing() {
        // t ↦ (t − 1/2)² hits 0 exactly at a sample.
        let r = spectral_flow(&diag_path(|t| vec![(t - 0.5).powi(2) + 0.0], 10), 1e-9).unwrap();
        assert_eq!(r.flow, 0);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn concatenation_adds() {
        let up = diag_path(|t| vec![t - 0.5, 2.0], 8);
        let down = diag_path(|t| vec![0.5 - 2.0 * t, 2.0 - 3.0 * t], 8);
        let both = up.concat(&down).unwrap();
        let f = |p: &MatrixPath<f64>| spectral_flow(p, 1e-9).unwrap().flow;
        assert_eq!(f(&both), f(&up) + f(&down));
        assert_eq!(f(&both), -1);
    }

    #[test]
    fn endpoint_must_be_invertible() {
        assert!(spectral_flow(&diag_path(|t| vec![t], 4), 1e-9).is_err());
    }
}
