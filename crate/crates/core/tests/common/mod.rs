// Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uflab::ufh::EventuallyPeriodicSequence;

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multigraph with loops and parallel edges allowed.
pub fn random_multigraph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    (n, edges)
}

/// Component count by union-find.
pub fn union_find_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

pub fn random_sequence(rng: &mut ChaCha8Rng) -> EventuallyPeriodicSequence {
    let mut block = |max_len: usize| -> Vec<i64> {
        let len = rng.gen_range(0..=max_len);
        let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        // Bias half of the periods to sum to zero so both verdicts occur.
        if !v.is_empty() && rng.gen_bool(0.5) {
            let s: i64 = v.iter().sum();
            v[0] -= s;
        }
        v
    };
    let core = block(8);
    let left = block(5);
    let right = block(5);
    let start = rng.gen_range(-6..=6);
    EventuallyPeriodicSequence::new(core, start, left, right)
}

/// Evaluates the eventually periodic sequence straight from its fields.
pub fn sequence_value(s: &EventuallyPeriodicSequence, n: i64) -> i64 {
    let end = s.core_start + s.core.len() as i64;
    if n < s.core_start {
        if s.left_period.is_empty() {
            return 0;
        }
        let l = s.left_period.len() as i64;
        s.left_period[(n - s.core_start).rem_euclid(l) as usize]
    } else if n < end {
        s.core[(n - s.core_start) as usize]
    } else {
        if s.right_period.is_empty() {
            return 0;
        }
        let r = s.right_period.len() as i64;
        s.right_period[(n - end).rem_euclid(r) as usize]
    }
}

/// max_{N < terms} |Σ_{n=0}^{N} b_{dir·n}|.
pub fn brute_partial_sup(s: &EventuallyPeriodicSequence, dir: i64, terms: i64) -> i64 {
    let (mut acc, mut sup) = (0i64, 0i64);
    for n in 0..terms {
        acc += sequence_value(s, dir * n);
        sup = sup.max(acc.abs());
    }
    sup
}

pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    g.qr().q()
}

/// Q diag(λ) Qᵀ with |λ| ∈ [gap, 3] and random signs; returns the matrix and λ.
pub fn random_gapped(rng: &mut ChaCha8Rng, n: usize, gap: f64) -> (DMatrix<f64>, Vec<f64>) {
    let lambdas: Vec<f64> = (0..n)
        .map(|_| {
            let m = rng.gen_range(gap..3.0);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    let q = random_orthogonal(rng, n);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&lambdas));
    let a = &q * d * q.transpose();
    ((&a + a.transpose()) * 0.5, lambdas)
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    (&g + g.transpose()) * 0.5
}

/// Laurent coefficients c_k, k ∈ −band..=band, whose symbol Σ c_k e^{ikθ}
/// stays at least `floor` away from zero on the circle.
pub fn random_symbol(rng: &mut ChaCha8Rng, band: i64, floor: f64) -> Vec<(i64, C64)> {
    loop {
        let lead = rng.gen_range(-band..=band);
        let coeffs: Vec<(i64, C64)> = (-band..=band)
            .map(|k| {
                let s = if k == lead { 2.0 } else { 0.6 };
                (k, C64::new(rng.gen_range(-s..s), rng.gen_range(-s..s)))
            })
            .collect();
        let min = (0..4096)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / 4096.0;
                coeffs
                    .iter()
                    .map(|&(k, c)| c * C64::from_polar(1.0, k as f64 * th))
                    .sum::<C64>()
                    .norm()
            })
            .fold(f64::INFINITY, f64::min);
        if min >= floor {
            return coeffs;
        }
    }
}

/// Winding number of Σ c_k z^k around 0 on |z| = 1, by the argument
/// principle: zeros of z^band·p(z) inside the disk minus band.
pub fn winding_by_roots(coeffs: &[(i64, C64)], band: i64) -> i64 {
    let deg = (2 * band) as usize;
    let mut poly = vec![C64::new(0.0, 0.0); deg + 1];
    for &(k, c) in coeffs {
        poly[(k + band) as usize] += c;
    }
    let mut top = deg;
    while top > 0 && poly[top].norm() < 1e-300 {
        top -= 1;
    }
    let mut low = 0;
    while poly[low].norm() < 1e-300 {
        low += 1;
    }
    // Roots at 0 from the trailing zero coefficients.
    let mut inside = low as i64;
    let m = top - low;
    if m > 0 {
        let lead = poly[top];
        let comp = DMatrix::from_fn(m, m, |i, j| {
            if i == 0 {
                -poly[top - 1 - j] / lead
            } else if i == j + 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let roots = comp.schur().eigenvalues().expect("complex Schur form is triangular");
        inside += roots.iter().filter(|z| z.norm() < 1.0).count() as i64;
    }
    inside - band
}

/// ∫_a^b f by composite Simpson with `panels` (even) panels.
pub fn simpson(f: impl Fn(f64) -> C64, a: f64, b: f64, panels: usize) -> C64 {
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += f(a + h * i as f64) * w;
    }
    s * (h / 3.0)
}

/// Coefficients of (1 − u²)^p in powers of u.
pub fn bump_poly(p: u32) -> Vec<f64> {
    let mut c = vec![0.0; 2 * p as usize + 1];
    let mut binom = 1.0;
    for j in 0..=p as usize {
        c[2 * j] = if j % 2 == 0 { binom } else { -binom };
        binom = binom * (p as usize - j) as f64 / (j + 1) as f64;
    }
    c
}

pub fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |s, &a| s * x + a)
}

pub fn poly_derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}
