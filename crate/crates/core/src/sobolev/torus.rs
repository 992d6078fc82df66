use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Lattice points beyond this count are refused rather than enumerated.
pub const MAX_LATTICE_POINTS: f64 = 4e9;

/// Parameters of the embedding H^{s+t} → H^s on the n-torus of side r for a
/// rank-m bundle, measured in the Schatten p-norm, summed over ‖k‖_∞ ≤ K.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusEmbeddingSpec<T> {
    pub n: u32,
    pub r: T,
    pub m: u32,
    pub t: T,
    pub p: T,
    pub cutoff: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SchattenResult<T> {
    Finite {
        /// (partial sum)^{1/p}.
        value: T,
        /// (partial sum + tail)^{1/p} − value.
        tail_bound: T,
        /// Σ_{‖k‖_∞ ≤ K} m⟨k⟩^{−pt}.
        partial_sum: T,
        /// Upper bound on the omitted part of the series.
        tail_sum: T,
        cutoff: u64,
    },
    Divergent {
        reason: String,
    },
}

impl<T: Scalar> SchattenResult<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            SchattenResult::Finite { value, .. } => Some(*value),
            SchattenResult::Divergent { .. } => None,
        }
    }
}

/// True iff Σ_k ⟨k⟩^{−pt} converges on ℤⁿ, i.e. p > n/t.
pub fn convergence_classify<T: Scalar>(n: u32, t: T, p: T) -> Result<bool> {
    if n == 0 || !(t > T::zero()) || !(p >= T::one()) {
        return Err(Error::invalid(format!(
            "need n ≥ 1, t > 0, p ≥ 1 (got n = {n}, t = {t}, p = {p})"
        )));
    }
    Ok(p > T::of(n as f64) / t)
}

/// Neumaier compensated sum, in the order given.
fn compensated<T: Scalar>(xs: impl IntoIterator<Item = T>) -> T {
    let (mut s, mut c) = (T::zero(), T::zero());
    for x in xs {
        let u = s + x;
        if s.abs() >= x.abs() {
            c += (s - u) + x;
        } else {
            c += (x - u) + s;
        }
        s = u;
    }
    s + c
}

/// Σ_{j ∈ ℤ, |j| > K} (1 + c j²)^{−σ/2} ≤ 2∫_K^∞ (c x²)^{−σ/2} dx.
fn one_dim_tail(c: f64, sigma: f64, k: f64) -> f64 {
    2.0 * c.powf(-sigma / 2.0) * k.powf(1.0 - sigma) / (sigma - 1.0)
}

/// Sum over all k ∈ ℤⁿ with ‖k‖_∞ = d of ⟨k⟩^{−pt}, with the coordinates
/// enumerated in a fixed order.
fn shell<T: Scalar>(n: u32, d: i64, c: T, e: T) -> T {
    if d == 0 {
        return T::one();
    }
    // Sign-reduced points (coordinates in 0..=d) weighted by 2^{#nonzero}.
    // Each is enumerated once, keyed by the first coordinate equal to d:
    // earlier coordinates range over 0..d, later ones over 0..=d.
    let n = n as usize;
    let mut acc = Vec::new();
    for lead in 0..n {
        let mut k = vec![0i64; n];
        k[lead] = d;
        let limit = |i: usize| if i < lead { d - 1 } else { d };
        let free: Vec<usize> = (0..n).filter(|&i| i != lead).collect();
        if free.iter().any(|&i| limit(i) < 0) {
            continue;
        }
        loop {
            let q: i64 = k.iter().map(|x| x * x).sum();
            let w = k.iter().filter(|&&x| x != 0).count() as i32;
            let bracket = T::one() + c * T::of(q as f64);
            acc.push(T::of(2f64.powi(w)) * bracket.powf(-e / T::of(2.0)));
            let mut pos = 0;
            while pos < free.len() {
                let i = free[pos];
                k[i] += 1;
                if k[i] <= limit(i) {
                    break;
                }
                k[i] = 0;
                pos += 1;
            }
            if pos == free.len() {
                break;
            }
        }
    }
    compensated(acc)
}

/// ‖j‖_p = (Σ_{k∈ℤⁿ} m⟨k⟩^{−pt})^{1/p} with ⟨k⟩ = (1 + (2π‖k‖/r)²)^{1/2}.
///
/// The tail over ‖k‖_∞ > K uses ⟨k⟩^{−pt} ≤ Π_i (1 + c k_i²)^{−pt/(2n)}
/// (AM–GM), so it is at most m(Gⁿ − G_Kⁿ) ≤ m·n·G^{n−1}(G − G_K) with G the
/// one-dimensional sum; G is bounded by its partial sum to 64 plus an
/// integral tail.
pub fn torus_schatten_norm<T: Scalar>(spec: &TorusEmbeddingSpec<T>) -> Result<SchattenResult<T>> {
    let TorusEmbeddingSpec { n, r, m, t, p, cutoff } = *spec;
    if !(r > T::zero()) || m == 0 {
        return Err(Error::invalid("need r > 0 and m ≥ 1"));
    }
    if cutoff == 0 {
        return Err(Error::invalid("cutoff must be at least 1"));
    }
    if !convergence_classify(n, t, p)? {
        return Ok(SchattenResult::Divergent {
            reason: format!(
                "Σ⟨k⟩^(−pt) over ℤ^{n} converges iff p > n/t; here p = {p} ≤ n/t = {}",
                T::of(n as f64) / t
            ),
        });
    }
    let points = (2.0 * cutoff as f64 + 1.0).powi(n as i32);
    if points > MAX_LATTICE_POINTS {
        return Err(Error::unsupported(format!(
            "cutoff {cutoff} in dimension {n} means {points:e} lattice points"
        )));
    }
    let c = (T::two_pi() / r).powi(2);
    let e = p * t;
    // Shells from the outside in: small terms first.
    let shells = (0..=cutoff as i64).rev().map(|d| shell(n, d, c, e));
    let partial = compensated(shells) * T::of(m as f64);

    let (c64, sigma) = (c.to64(), e.to64() / n as f64);
    let g1 = |j: f64| (1.0 + c64 * j * j).powf(-sigma / 2.0);
    let gk = |k: u64| 1.0 + 2.0 * (1..=k).map(|j| g1(j as f64)).sum::<f64>();
    let a = cutoff.min(64);
    let g_up = gk(a) + one_dim_tail(c64, sigma, a as f64);
    let gap = one_dim_tail(c64, sigma, cutoff as f64);
    let tail = m as f64 * n as f64 * g_up.powi(n as i32 - 1) * gap;

    let inv = T::one() / p;
    let value = partial.powf(inv);
    let tail_sum = T::of(tail);
    Ok(SchattenResult::Finite {
        value,
        tail_bound: (partial + tail_sum).powf(inv) - value,
        partial_sum: partial,
        tail_sum,
        cutoff,
    })
}

/// (Σ σᵢ^s)^{1/s} over the singular values.
pub fn schatten_norm_matrix<T: Scalar>(k: &DMatrix<T>, s: T) -> Result<T> {
    if !(s >= T::one()) || !s.finite() {
        return Err(Error::invalid(format!("Schatten exponent {s} must be a finite number ≥ 1")));
    }
    let sv = k.clone().singular_values();
    let top = sv.iter().fold(T::zero(), |a, &x| a.max(x));
    if top == T::zero() {
        return Ok(T::zero());
    }
    let sum = compensated(sv.iter().map(|&x| (x / top).powf(s)));
    Ok(top * sum.powf(T::one() / s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(n: u32, t: f64, p: f64, cutoff: u64) -> TorusEmbeddingSpec<f64> {
        TorusEmbeddingSpec { n, r: 2.0 * PI, m: 1, t, p, cutoff }
    }

    #[test]
    fn classify_examples() {
        assert!(convergence_classify(1, 1.0, 2.0).unwrap());
        assert!(!convergence_classify(2, 1.0, 2.0).unwrap());
        assert!(convergence_classify(3, 0.5, 7.0).unwrap());
        assert!(convergence_classify(1, 0.0, 2.0).is_err());
    }

    #[test]
    fn one_dimensional_closed_form() {
        let res = torus_schatten_norm(&spec(1, 1.0, 2.0, 100_000)).unwrap();
        let exact = (PI / PI.tanh()).sqrt();
        let SchattenResult::Finite { value, tail_bound, .. } = res else { panic!() };
        assert!(value <= exact && exact <= value + tail_bound + 1e-12);
        assert!(tail_bound < 1e-4);
        assert!(matches!(torus_schatten_norm(&spec(1, 1.0, 1.0, 10)).unwrap(), SchattenResult::Divergent { .. }));
    }

    #[test]
    fn large_gain_is_dominated_by_zero_mode() {
        let v = torus_schatten_norm(&spec(1, 50.0, 1.0, 100)).unwrap().value().unwrap();
        // Next terms are 2·2^{−25}.
        assert!((v - 1.0).abs() < 1e-7);
    }

    #[test]
    fn two_dimensional_bound_brackets_a_long_sum() {
        let short = torus_schatten_norm(&spec(2, 1.5, 2.0, 20)).unwrap();
        let long = torus_schatten_norm(&spec(2, 1.5, 2.0, 400)).unwrap();
        let (SchattenResult::Finite { partial_sum: s1, tail_sum: t1, .. }, SchattenResult::Finite { partial_sum: s2, .. }) =
            (short, long)
        else {
            panic!()
        };
        assert!(s1 < s2 && s2 <= s1 + t1);
    }

    #[test]
    fn shells_match_brute_force() {
        let c = 0.7;
        for n in 1..=3u32 {
            for d in 0..4i64 {
                let mut brute = 0.0;
                let pts = (2 * d + 1).pow(n);
                for idx in 0..pts {
                    let mut x = idx;
                    let (mut q, mut inf) = (0i64, 0i64);
                    for _ in 0..n {
                        let k = x % (2 * d + 1) - d;
                        x /= 2 * d + 1;
                        q += k * k;
                        inf = inf.max(k.abs());
                    }
                    if inf == d {
                        brute += (1.0 + c * q as f64).powf(-1.3);
                    }
                }
                assert!((shell(n, d, c, 2.6) - brute).abs() < 1e-13, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn matrix_norm_examples() {
        let id = DMatrix::<f64>::identity(3, 3);
        assert!((schatten_norm_matrix(&id, 1.0).unwrap() - 3.0).abs() < 1e-14);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[3.0f64, 4.0]));
        assert!((schatten_norm_matrix(&d, 2.0).unwrap() - 5.0).abs() < 1e-14);
        assert!(schatten_norm_matrix(&d, 0.5).is_err());
        assert_eq!(schatten_norm_matrix(&DMatrix::<f64>::zeros(2, 2), 3.0).unwrap(), 0.0);
    }
}
