//! The ten acceptance criteria, each at its stated tolerance. Prints one
//! PASS/FAIL line per criterion and fails if any criterion fails.

mod common;

use std::time::Instant;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use uflab::graph::{Ends, FiniteGraph, GraphPresentation};
use uflab::index::{
    aps_positive_count, compressed_index, rho_aps_consistency, rho_projection, LineOperator, Stabilized,
};
use uflab::sobolev::{extend_reflect, reflection_coefficients, torus_schatten_norm, SchattenResult};
use uflab::specops::{
    apply_function, bounded_transform, chebyshev_banded, eigensolve, eta, operator_norm, BandedMatrix,
};
use uflab::ufh::{classify_k, homology_finite, Answer, ClassifyOptions, EventuallyPeriodicSequence, K1Witness, Side};
use uflab::wave::{
    bandlimited_calculus, aliasing_error_bound, evolve, propagation_report, propagation_speed, BoundaryCondition,
};
use uflab::{ApsModel, BandlimitedInput, NormalizingFunction, SpinorGridState, SymMatrix, TorusEmbeddingSpec, TranslationModel};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_finite_homology() -> Outcome {
    let mut rng = rng(1);
    let start = Instant::now();
    for case in 0..500 {
        let (n, edges) = random_multigraph(&mut rng, 30, 60);
        let g = FiniteGraph::new(n, edges.clone()).map_err(|e| e.to_string())?;
        let h = homology_finite(&g).map_err(|e| e.to_string())?;
        let comps = union_find_components(n, &edges);
        check(h.h0 == comps, || format!("case {case}: h0 {} vs {comps} components", h.h0))?;
        check(h.h1 == edges.len() + comps - n, || format!("case {case}: h1 {}", h.h1))?;
        check(h.torsion.is_empty(), || format!("case {case}: torsion {:?}", h.torsion))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("500 graphs in {secs:.3} s"))
}

fn c2_classification() -> Outcome {
    let opts = ClassifyOptions::default();
    let err = |e: uflab::Error| e.to_string();
    let z = classify_k(&GraphPresentation::integer_path(), &opts).map_err(err)?;
    check((z.k0_zero, z.k1_zero) == (Answer::No, Answer::No), || format!("Z: {:?}", (z.k0_zero, z.k1_zero)))?;
    match &z.evidence.k1_witness {
        Some(K1Witness::TwoEndedPath { orbits }) => check(
            orbits.len() == 1 && orbits[0].sup_norm() == 1 && !orbits[0].in_s(Side::Both).member,
            || format!("Z witness {orbits:?}"),
        )?,
        w => return Err(format!("Z witness {w:?}")),
    }
    let n = classify_k(&GraphPresentation::natural_ray(), &opts).map_err(err)?;
    check((n.k0_zero, n.k1_zero) == (Answer::No, Answer::Yes), || format!("N: {:?}", (n.k0_zero, n.k1_zero)))?;
    let t = classify_k(&GraphPresentation::regular_tree(3).map_err(err)?, &opts).map_err(err)?;
    check((t.k0_zero, t.k1_zero) == (Answer::Yes, Answer::No), || format!("T3: {:?}", (t.k0_zero, t.k1_zero)))?;
    let radii: Vec<usize> = t.evidence.flows.iter().filter(|f| f.feasible && f.capacity == 2).map(|f| f.radius).collect();
    check(radii == (2..=6).collect::<Vec<_>>(), || format!("T3 flow radii {radii:?}"))?;
    let ends = t.evidence.ends.as_ref().map(|e| e.ends);
    check(ends == Some(Ends::Many), || format!("T3 ends {ends:?}"))?;
    Ok("Z (No, No) rank-1 witness; N (No, Yes); T3 (Yes, No) flows r=2..6, many ends".into())
}

fn c3_summability() -> Outcome {
    let mut rng = rng(3);
    let (mut members, mut non) = (0, 0);
    for case in 0..200 {
        let s = random_sequence(&mut rng);
        for (side, dirs) in [(Side::Right, vec![1]), (Side::Left, vec![-1]), (Side::Both, vec![1, -1])] {
            let sups: Vec<i64> = dirs.iter().map(|&d| brute_partial_sup(&s, d, 10_000)).collect();
            // Bounded sums stay below 8·4 + 5·4 in absolute value; a drifting
            // period gains at least 1 every 5 terms.
            let bounded = sups.iter().all(|&x| x <= 200);
            check(sups.iter().all(|&x| x <= 200 || x >= 1000), || format!("case {case}: ambiguous sups {sups:?}"))?;
            let d = s.in_s(side);
            check(d.member == bounded, || format!("case {case} {side:?}: in_s {} vs brute {sups:?} for {s}", d.member))?;
            if let uflab::ufh::SCertificate::Bounded { bound } = d.certificate {
                let total: i64 = sups.iter().sum();
                check(bound >= total, || format!("case {case}: bound {bound} < brute {total}"))?;
            }
            if d.member {
                members += 1;
            } else {
                non += 1;
            }
        }
    }
    check(EventuallyPeriodicSequence::delta(0).in_s(Side::Right).member, || "δ₀ ∉ S(ℕ₀)".into())?;
    let one = EventuallyPeriodicSequence::constant(1);
    check(!one.in_s(Side::Right).member && !one.in_s(Side::Both).member, || "1 ∈ S".into())?;
    Ok(format!("200 sequences, {members} member / {non} non-member decisions agree"))
}

// 6.283185 is the truncated side length of the reference run, not 2π.
#[allow(clippy::approx_constant)]
fn c4_torus() -> Outcome {
    let spec = TorusEmbeddingSpec { n: 1, r: 6.283185, m: 1, t: 1.0, p: 2.0, cutoff: 1_000_000 };
    let start = Instant::now();
    let res = torus_schatten_norm(&spec).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let v = res.value().ok_or("divergent")?;
    check((v - 1.775767).abs() <= 1e-5, || format!("value {v}"))?;
    check(secs < 10.0, || format!("took {secs:.2} s"))?;
    for (n, t) in [(1u32, 1.0), (2, 1.0), (3, 1.5), (2, 0.5)] {
        let s = TorusEmbeddingSpec { n, r: 1.0, m: 2, t, p: n as f64 / t, cutoff: 10 };
        let r = torus_schatten_norm(&s).map_err(|e| e.to_string())?;
        check(matches!(r, SchattenResult::Divergent { .. }), || format!("p = n/t for n={n} t={t}: {r:?}"))?;
    }
    let mut prev = 0.0;
    for cutoff in [1u64, 2, 4, 8, 16, 32, 64, 128] {
        let s = TorusEmbeddingSpec { n: 2, r: 3.0, m: 1, t: 1.5, p: 2.0, cutoff };
        let Ok(SchattenResult::Finite { partial_sum, .. }) = torus_schatten_norm(&s) else {
            return Err(format!("cutoff {cutoff} failed"));
        };
        check(partial_sum > prev, || format!("partial sums not increasing at cutoff {cutoff}"))?;
        prev = partial_sum;
    }
    Ok(format!("value {v:.7} in {secs:.3} s; p = n/t divergent; partial sums increasing"))
}

fn c5_reflection() -> Outcome {
    let int = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect::<Vec<_>>();
    for (k, expect) in [(0, int(&[1])), (1, int(&[3, -2])), (2, int(&[6, -8, 3]))] {
        let c = reflection_coefficients(k).map_err(|e| e.to_string())?;
        check(c.coeffs == expect, || format!("order {k}: {:?}", c.coeffs))?;
    }
    let mut worst: f64 = 0.0;
    for k in 0..=12usize {
        let c = reflection_coefficients(k).map_err(|e| e.to_string())?;
        // Σ_j a_j (j + 1)^i = (−1)^i for i = 0..=k, in exact arithmetic.
        for i in 0..=k as u32 {
            let sum = c.coeffs.iter().enumerate().fold(BigRational::zero(), |s, (j, a)| {
                s + a * BigRational::from_integer(BigInt::from(j as i64 + 1).pow(i))
            });
            let target = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            check(sum == target, || format!("order {k} moment {i}: {sum}"))?;
        }
        // Reproduces every polynomial of degree ≤ k.
        let h = 1.0 / 512.0;
        let negative = 3;
        let count = (k + 1) * negative + 1;
        let mut rng = rng(50 + k as u64);
        let coeffs: Vec<f64> = (0..=k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let samples: Vec<f64> = (0..count).map(|i| poly_eval(&coeffs, i as f64 * h)).collect();
        let e = extend_reflect(&samples, k, negative).map_err(|e| e.to_string())?;
        for i in 1..=negative as i64 {
            let err = (e.at(-i) - poly_eval(&coeffs, -(i as f64) * h)).abs();
            worst = worst.max(err);
        }
    }
    check(worst <= 1e-10, || format!("polynomial reproduction error {worst:e}"))?;
    Ok(format!("k = 0,1,2 exact; moments exact for k ≤ 12; reproduction error {worst:.1e}"))
}

fn bump_state(n: usize, lo: usize, hi: usize) -> Vec<C64> {
    (0..n)
        .map(|j| {
            if j > lo && j < hi {
                let s = (j - lo) as f64 / (hi - lo) as f64;
                C64::new((std::f64::consts::PI * s).sin().powi(2), 0.3 * s)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn c6_propagation() -> Outcome {
    let speed = propagation_speed(&[DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])]).map_err(|e| e.to_string())?;
    let mut drift: f64 = 0.0;
    let mut rng = rng(6);
    let h = 1.0 / 32.0;
    for case in 0..40 {
        let lo = rng.gen_range(0..30);
        let hi = lo + rng.gen_range(3..30);
        let u = SpinorGridState::new(0.0, h, rng.gen_range(0..20), bump_state(64, lo, hi), bump_state(64, hi / 2, hi + 5))
            .map_err(|e| e.to_string())?;
        let steps = rng.gen_range(-80i64..=80);
        let t = steps as f64 * h;
        let bcs = [BoundaryCondition::FreeLine, BoundaryCondition::chirality(1).unwrap(), BoundaryCondition::chirality(-1).unwrap()];
        for bc in bcs {
            let v = evolve(&u, t, bc).map_err(|e| e.to_string())?;
            let r = propagation_report(&u, &v, t, speed).map_err(|e| e.to_string())?;
            check(r.contained, || format!("case {case} {bc:?} t={t}: growth {} > {}", r.growth, r.speed_bound + h))?;
            drift = drift.max((v.norm() - u.norm()).abs());
        }
    }
    let n = 1024;
    let mut min_margin = f64::INFINITY;
    for j in 3..=8 {
        let delta = 0.5f64.powi(j);
        let width = (delta * n as f64) as usize;
        let u = SpinorGridState::unit_interval(bump_state(n, 0, width)).map_err(|e| e.to_string())?;
        let u = SpinorGridState::new(0.0, u.h, 0, u.plus, vec![C64::new(0.0, 0.0); n]).map_err(|e| e.to_string())?;
        let v = evolve(&u, delta, BoundaryCondition::PeriodicShift).map_err(|e| e.to_string())?;
        let r = propagation_report(&u, &v, delta, speed).map_err(|e| e.to_string())?;
        check(!r.contained && r.violation > 0.0, || format!("δ = {delta}: bound not violated"))?;
        check(r.separation >= 1.0 - 2.0 * delta, || format!("δ = {delta}: separation {}", r.separation))?;
        min_margin = min_margin.min(r.separation - (1.0 - 2.0 * delta));
        drift = drift.max((v.norm() - u.norm()).abs());
    }
    check(drift <= 1e-12, || format!("norm drift {drift:e}"))?;
    Ok(format!("free/chirality contained; periodic sweep violates with margin ≥ {min_margin:.4}; drift {drift:.1e}"))
}

fn c7_bandlimited() -> Outcome {
    let err = |e: uflab::Error| e.to_string();
    let model = TranslationModel { points: 128, h: 1.0 / 16.0 };
    for r_cells in [1usize, 5, 20, 63] {
        let r = r_cells as f64 * model.h;
        let input = BandlimitedInput {
            radius: r,
            step: model.h,
            nodes: vec![(-r, C64::new(1.0, 0.0)), (r, C64::new(0.5, -0.25))],
        };
        let (_, rep) = bandlimited_calculus(&model, &input).map_err(err)?;
        check(rep.band == r_cells && rep.certified, || format!("R/h = {r_cells}: band {}", rep.band))?;
    }
    // Smooth f̂(t) = (1 − (t/R)²)⁵ against the exact Fourier calculus.
    let radius = 1.0;
    let p = bump_poly(5);
    let fhat = |t: f64| poly_eval(&p, t / radius);
    let input = BandlimitedInput::sampled(radius, model.h, |t| C64::new(fhat(t), 0.0)).map_err(err)?;
    let (m, _) = bandlimited_calculus(&model, &input).map_err(err)?;
    let d4 = poly_derivative(&poly_derivative(&poly_derivative(&poly_derivative(&p))));
    let l1 = simpson(|u| C64::new(poly_eval(&p, u).abs(), 0.0), -1.0, 1.0, 20_000).re * radius;
    let l1_fourth = simpson(|u| C64::new(poly_eval(&d4, u).abs(), 0.0), -1.0, 1.0, 20_000).re / radius.powi(3);
    let bound = aliasing_error_bound(&model, model.h, l1 * 1.01, l1_fourth * 1.01);
    let n = model.points;
    let norm = (2.0 * std::f64::consts::PI).sqrt();
    let mut worst: f64 = 0.0;
    for xi in model.frequencies() {
        let f = simpson(|t| C64::from_polar(fhat(t), t * xi), -radius, radius, 20_000) / norm;
        let v: Vec<C64> = (0..n).map(|j| C64::from_polar(1.0, xi * j as f64 * model.h)).collect();
        for i in 0..n {
            let mv: C64 = (0..n).map(|j| m[(i, j)] * v[j]).sum();
            worst = worst.max((mv - f * v[i]).norm());
        }
    }
    check(worst <= bound, || format!("error {worst:e} > bound {bound:e}"))?;
    Ok(format!("two-node band = R/h; smooth error {worst:.2e} ≤ bound {bound:.2e}"))
}

const W: [usize; 3] = [16, 32, 64];

fn c8_index() -> Outcome {
    let err = |e: uflab::Error| e.to_string();
    for k in -3..=3 {
        let r = compressed_index(&LineOperator::<f64>::shift(k), &W).map_err(err)?;
        check(r.stabilized_index == Stabilized::Index(-k), || format!("shift^{k}: {}", r.stabilized_index))?;
    }
    let mut rng = rng(8);
    let mut windings = Vec::new();
    let mut symbols = Vec::new();
    for case in 0..30 {
        let band = rng.gen_range(1..=3);
        let coeffs = random_symbol(&mut rng, band, 0.3);
        let w = winding_by_roots(&coeffs, band);
        let u = LineOperator::shift_polynomial(&coeffs);
        let r = compressed_index(&u, &[32, 64, 128]).map_err(err)?;
        check(r.stabilized_index == Stabilized::Index(-w), || format!("symbol {case}: index {} vs winding {w}", r.stabilized_index))?;
        windings.push(w);
        symbols.push((u, w));
    }
    for pair in symbols.chunks(2).take(5) {
        let sum = pair[0].0.direct_sum(&pair[1].0);
        let r = compressed_index(&sum, &[32, 64, 128]).map_err(err)?;
        let expect = -(pair[0].1 + pair[1].1);
        check(r.stabilized_index == Stabilized::Index(expect), || format!("block sum: {} vs {expect}", r.stabilized_index))?;
    }
    windings.sort();
    windings.dedup();
    Ok(format!("shifts −3..3 exact; 30 symbols (windings {windings:?}) match; block sums additive"))
}

fn c9_aps() -> Outcome {
    let err = |e: uflab::Error| e.to_string();
    let mut rng = rng(9);
    let (mut worst_angle, mut worst_chi): (f64, f64) = (0.0, 0.0);
    for case in 0..20 {
        let n = rng.gen_range(1..=8);
        let (a, lambdas) = random_gapped(&mut rng, n, 0.2);
        let sym = SymMatrix::new(a).map_err(err)?;
        let model = ApsModel::new(sym.clone());
        let pos = lambdas.iter().filter(|&&l| l > 0.0).count();
        let count = aps_positive_count(&model).map_err(err)?;
        check(count.quadrature_count == pos, || format!("case {case}: count {} vs {pos}", count.quadrature_count))?;
        let gap = lambdas.iter().fold(f64::INFINITY, |g, l| g.min(l.abs())) * (1.0 - 1e-6);
        let chi1 = NormalizingFunction::smooth_sign(gap).map_err(err)?;
        let chi2 = NormalizingFunction::chebyshev_sign(15, gap).map_err(err)?;
        for chi in [&chi1, &chi2] {
            let rep = rho_aps_consistency(&model, chi).map_err(err)?;
            check(rep.trace_matches && rep.aps_count == pos, || format!("case {case}: trace {} vs {pos}", rep.trace))?;
            check(rep.max_angle <= 1e-8, || format!("case {case}: angle {:e}", rep.max_angle))?;
            worst_angle = worst_angle.max(rep.max_angle);
        }
        let p1 = rho_projection(&sym, gap, &chi1).map_err(err)?;
        let p2 = rho_projection(&sym, gap, &chi2).map_err(err)?;
        let d = operator_norm(&(p1 - p2));
        check(d <= 1e-10, || format!("case {case}: χ-dependence {d:e}"))?;
        worst_chi = worst_chi.max(d);
    }
    Ok(format!("20 gapped A: trace = count; max angle {worst_angle:.1e}; χ-difference {worst_chi:.1e}"))
}

fn c10_toolkit() -> Outcome {
    let err = |e: uflab::Error| e.to_string();
    let mut rng = rng(10);
    let mut worst_norm: f64 = 0.0;
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let scale = 10f64.powf(rng.gen_range(-2.0..3.0));
        let t = DMatrix::from_fn(r, c, |_, _| rng.gen_range(-scale..scale));
        let z = bounded_transform(&t).map_err(err)?;
        worst_norm = worst_norm.max(operator_norm(&z));
    }
    check(worst_norm <= 1.0 + 1e-10, || format!("‖Z_T‖ = {worst_norm}"))?;
    let pm = eigensolve(&SymMatrix::from_diagonal(&[1.0, -1.0])).map_err(err)?;
    check(eta(&pm, 0.0, None) == 0.0, || "η(diag(1, −1), 0) ≠ 0".into())?;
    let mut worst_eta: f64 = 0.0;
    for _ in 0..20 {
        let na = rng.gen_range(1..=6);
        let (a, _) = random_gapped(&mut rng, na, 0.1);
        let nb = rng.gen_range(1..=6);
        let (b, _) = random_gapped(&mut rng, nb, 0.1);
        let (a, b) = (SymMatrix::new(a).map_err(err)?, SymMatrix::new(b).map_err(err)?);
        let (sa, sb) = (eigensolve(&a).map_err(err)?, eigensolve(&b).map_err(err)?);
        let sab = eigensolve(&a.direct_sum(&b)).map_err(err)?;
        for s in [0.0, 0.5, 1.0, 2.0] {
            let d = (eta(&sab, s, None) - eta(&sa, s, None) - eta(&sb, s, None)).abs();
            worst_eta = worst_eta.max(d);
        }
    }
    check(worst_eta <= 1e-10, || format!("η block additivity off by {worst_eta:e}"))?;
    let mut worst_ratio: f64 = 0.0;
    for case in 0..20 {
        let n = 24;
        let b = rng.gen_range(1..=3usize);
        let g = random_symmetric(&mut rng, n);
        let dense = DMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) <= b { g[(i, j)] } else { 0.0 });
        let m = BandedMatrix::new(dense.clone(), b).map_err(err)?;
        let spec = eigensolve(&SymMatrix::new(dense).map_err(err)?).map_err(err)?;
        let r = spec.norm() * 1.01;
        let k = rng.gen_range(0..=12i64);
        let f = |x: f64| (0.7 * x).sin() + (x * x / 4.0).exp();
        let (p, bound) = chebyshev_banded(&m, f, k, (-r, r)).map_err(err)?;
        let kb = (k as usize * b).min(n - 1);
        check(p.measured_band() <= kb && p.band() <= kb, || format!("case {case}: band {} > k·b = {kb}", p.measured_band()))?;
        let exact = apply_function(&spec, f).map_err(err)?;
        let e = operator_norm(&(p.matrix() - exact.matrix()));
        check(e <= bound, || format!("case {case}: error {e:e} > bound {bound:e}"))?;
        worst_ratio = worst_ratio.max(e / bound);
    }
    Ok(format!("max ‖Z_T‖ {worst_norm:.12}; η additive to {worst_eta:.1e}; Chebyshev error/bound ≤ {worst_ratio:.3}"))
}

// Runs without the libtest harness so the per-criterion lines are never
// captured; a failed criterion exits nonzero.
fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("finite homology", c1_finite_homology),
        ("K-classification", c2_classification),
        ("summability", c3_summability),
        ("torus Schatten norm", c4_torus),
        ("reflection extension", c5_reflection),
        ("finite propagation", c6_propagation),
        ("band-limited calculus", c7_bandlimited),
        ("compressed index", c8_index),
        ("APS / rho consistency", c9_aps),
        ("spectral toolkit", c10_toolkit),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
