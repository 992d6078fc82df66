use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specops::{apply_function, eigensolve, max_abs, operator_norm, spectral_gap, NormalizingFunction, SymMatrix};

/// Half-cylinder model u′ = −Au on [0, ∞) with A the boundary operator.
#[derive(Clone, Debug)]
pub struct ApsModel<T: Scalar> {
    pub a: SymMatrix<T>,
    /// Initial integration horizon; doubled until a verdict.
    pub horizon: T,
    /// Simpson panel width.
    pub step: T,
    /// ∫ beyond this value counts as divergent.
    pub divergence_threshold: T,
    /// Relative change of ∫ under doubling that counts as stable.
    pub stability_tol: T,
    /// Eigenvalues below this magnitude make A singular; `None` means 1e-9·‖A‖.
    pub zero_tol: Option<T>,
}

impl<T: Scalar> ApsModel<T> {
    pub fn new(a: SymMatrix<T>) -> Self {
        ApsModel {
            a,
            horizon: T::one(),
            step: T::of(0.01),
            divergence_threshold: T::of(1e12),
            stability_tol: T::of(1e-10),
            zero_tol: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeIntegral {
    pub eigenvalue: f64,
    /// ∫₀^T e^{−2λt} dt at the final horizon.
    pub integral: f64,
    pub horizon: f64,
    pub square_integrable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApsCount {
    pub quadrature_count: usize,
    pub eigenvalue_count: usize,
    pub agree: bool,
    pub modes: Vec<ModeIntegral>,
}

/// Composite Simpson for ∫_a^b e^{−2λt} dt with panels of width ≤ step.
fn simpson<T: Scalar>(lambda: T, a: T, b: T, step: T) -> T {
    let panels = (((b - a) / step).to64().ceil() as usize).clamp(2, 1 << 16);
    let panels = panels + panels % 2;
    let h = (b - a) / T::of_usize(panels);
    let f = |t: T| (-(T::of(2.0) * lambda * t)).exp();
    let mut s = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { T::of(4.0) } else { T::of(2.0) };
        s += w * f(a + h * T::of_usize(i));
    }
    s * h / T::of(3.0)
}

const MAX_DOUBLINGS: usize = 200;

/// Number of independent square-integrable solutions e^{−tA}u₀, decided
/// mode by mode by quadrature with horizon doubling, and compared with the
/// number of positive eigenvalues.
pub fn aps_positive_count<T: Scalar>(model: &ApsModel<T>) -> Result<ApsCount> {
    if !(model.horizon > T::zero() && model.step > T::zero() && model.divergence_threshold > T::zero()) {
        return Err(Error::invalid("horizon, step and divergence threshold must be positive"));
    }
    let spec = eigensolve(&model.a)?;
    let tol = model.zero_tol.unwrap_or_else(|| spec.default_zero_tol());
    if let Some(l) = spec.eigenvalues.iter().find(|l| l.abs() <= tol) {
        return Err(Error::invalid(format!("A is not invertible: eigenvalue {l} within {tol}")));
    }
    let mut modes = Vec::new();
    for &l in spec.eigenvalues.iter() {
        let (mut t, mut integral) = (model.horizon, simpson(l, T::zero(), model.horizon, model.step));
        let mut verdict = None;
        for _ in 0..MAX_DOUBLINGS {
            let next = integral + simpson(l, t, t + t, model.step);
            t += t;
            if !next.finite() || next > model.divergence_threshold {
                integral = next;
                verdict = Some(false);
                break;
            }
            let stable = (next - integral).abs() <= model.stability_tol * next;
            integral = next;
            if stable {
                verdict = Some(true);
                break;
            }
        }
        let Some(square_integrable) = verdict else {
            return Err(Error::numerical(
                format!("half-cylinder quadrature for eigenvalue {l} (no verdict)"),
                integral.to64(),
            ));
        };
        modes.push(ModeIntegral {
            eigenvalue: l.to64(),
            integral: integral.to64(),
            horizon: t.to64(),
            square_integrable,
        });
    }
    let quadrature_count = modes.iter().filter(|m| m.square_integrable).count();
    let eigenvalue_count = spec.eigenvalues.iter().filter(|&&l| l > tol).count();
    if quadrature_count != eigenvalue_count {
        return Err(Error::numerical(
            format!("half-cylinder kernel: quadrature counts {quadrature_count}, eigenvalues count {eigenvalue_count}"),
            (quadrature_count as f64 - eigenvalue_count as f64).abs(),
        ));
    }
    Ok(ApsCount {
        quadrature_count,
        eigenvalue_count,
        agree: true,
        modes,
    })
}

/// P₀ = (I + χ(D))/2 for D gapped at c and χ admissible for c.
pub fn rho_projection<T: Scalar>(d: &SymMatrix<T>, c: T, chi: &NormalizingFunction<T>) -> Result<DMatrix<T>> {
    let spec = eigensolve(d)?;
    if !spectral_gap(&spec, c)? {
        return Err(Error::invalid(format!("D has spectrum inside (−{c}, {c})")));
    }
    if !chi.admissible_for(c) {
        return Err(Error::invalid(format!(
            "{} is not admissible for gap {c}: 1 − χ² does not vanish outside (−c, c)",
            chi.name()
        )));
    }
    let half = T::of(0.5);
    let p = apply_function(&spec, |x| (T::one() + chi.eval(x)) * half)?.into_matrix();
    let res = max_abs(&(&p * &p - &p));
    if res > T::of(T::RESIDUAL_TOL) {
        return Err(Error::numerical("ρ projection idempotence", res.to64()));
    }
    Ok(p)
}

/// Principal angles between the column spans of orthonormal Q₁ and Q₂,
/// via sin θ = singular values of (I − Q₂Q₂ᵀ)Q₁ (accurate for small angles).
pub fn principal_angles<T: Scalar>(q1: &DMatrix<T>, q2: &DMatrix<T>) -> Result<Vec<T>> {
    if q1.ncols() != q2.ncols() {
        return Err(Error::invalid(format!(
            "subspaces have dimensions {} and {}",
            q1.ncols(),
            q2.ncols()
        )));
    }
    if q1.ncols() == 0 {
        return Ok(Vec::new());
    }
    let resid = q1 - q2 * (q2.transpose() * q1);
    Ok(resid
        .singular_values()
        .iter()
        .map(|s| s.min(T::one()).asin())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub gap: f64,
    pub normalizing_function: String,
    pub trace: f64,
    pub aps_count: usize,
    pub trace_matches: bool,
    pub max_angle: f64,
    pub angles_ok: bool,
    pub consistent: bool,
}

/// Checks trace P₀ = number of L² half-cylinder solutions and that range P₀
/// is the positive eigenspace of A (principal angles ≤ 1e-8).
pub fn rho_aps_consistency<T: Scalar>(model: &ApsModel<T>, chi: &NormalizingFunction<T>) -> Result<ConsistencyReport> {
    let count = aps_positive_count(model)?;
    let spec = eigensolve(&model.a)?;
    let gap = spec.eigenvalues.iter().fold(T::max_value().unwrap(), |g, l| g.min(l.abs()));
    let p = rho_projection(&model.a, gap, chi)?;
    let trace = p.trace();
    // Range of P₀ from its own eigenvectors, independent of A's.
    let pspec = eigensolve(&SymMatrix::with_tolerance(p.clone(), f64::INFINITY)?)?;
    let range = pspec.positive_subspace(T::of(0.5));
    let pos = spec.positive_subspace(T::zero());
    let angles = principal_angles(&pos, &range)?;
    let max_angle = angles.iter().fold(T::zero(), |a, &x| a.max(x)).to64();
    let trace_matches = (trace - T::of_usize(count.quadrature_count)).abs() <= T::of(1e-8);
    let angles_ok = max_angle <= 1e-8;
    debug_assert!(operator_norm(&p) <= T::one() + T::of(1e-8));
    Ok(ConsistencyReport {
        gap: gap.to64(),
        normalizing_function: chi.name().to_string(),
        trace: trace.to64(),
        aps_count: count.quadrature_count,
        trace_matches,
        max_angle,
        angles_ok,
        consistent: trace_matches && angles_ok,
    })
}
