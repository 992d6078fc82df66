use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::state::SpinorGridState;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specops::operator_norm;

/// Boundary behaviour of the one-dimensional Dirac evolution.
///
/// * `FreeLine`: the whole line, u₊ moves right and u₋ left at unit speed.
/// * `Chirality`: half-line with the wall half a cell left of global index 0;
///   u₋ reaching the wall comes back as `sign`·u₊.
/// * `PeriodicShift`: scalar field on [0, 1) evolved by the nonlocal rule
///   u ↦ ũ(x + t), ũ the 1-periodic continuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryCondition {
    FreeLine,
    Chirality { sign: i8 },
    PeriodicShift,
}

impl BoundaryCondition {
    pub fn chirality(sign: i8) -> Result<Self> {
        if sign == 1 || sign == -1 {
            Ok(BoundaryCondition::Chirality { sign })
        } else {
            Err(Error::invalid(format!("chirality sign must be +1 or -1, got {sign}")))
        }
    }
}

/// Whole number of cells in t, or an error if t is off the grid.
pub fn grid_steps<T: Scalar>(t: T, h: T) -> Result<i64> {
    let r = (t / h).to64();
    let m = r.round();
    if !r.is_finite() || (r - m).abs() > 1e-9 * m.abs().max(1.0) {
        return Err(Error::invalid(format!(
            "time {t} is not a multiple of the grid step {h}"
        )));
    }
    Ok(m as i64)
}

/// c_D = sup over samples of the operator norm of the symbol coefficient.
pub fn propagation_speed<T: Scalar>(samples: &[DMatrix<T>]) -> Result<T> {
    if samples.is_empty() {
        return Err(Error::invalid("no symbol coefficient samples"));
    }
    Ok(samples
        .iter()
        .map(operator_norm)
        .fold(T::zero(), |a, x| a.max(x)))
}

/// Exact evolution along characteristics for grid-aligned t.
pub fn evolve<T: Scalar>(
    state: &SpinorGridState<T>,
    t: T,
    bc: BoundaryCondition,
) -> Result<SpinorGridState<T>> {
    let m = grid_steps(t, state.h)?;
    if m == 0 {
        return Ok(state.clone());
    }
    let zero = Complex::new(T::zero(), T::zero());
    match bc {
        BoundaryCondition::FreeLine => {
            let pad = m.abs();
            let lo = state.offset - pad;
            let len = state.len() + 2 * pad as usize;
            let (mut plus, mut minus) = (vec![zero; len], vec![zero; len]);
            for j in 0..len {
                let g = lo + j as i64;
                plus[j] = state.at(g - m).0;
                minus[j] = state.at(g + m).1;
            }
            SpinorGridState::new(state.x0, state.h, lo, plus, minus)
        }
        BoundaryCondition::Chirality { sign } => {
            if state.offset < 0 {
                return Err(Error::invalid(format!(
                    "state starts at index {} but the half-line begins at 0",
                    state.offset
                )));
            }
            let s = T::of(sign as f64);
            let len = state.offset as usize + state.len() + m.unsigned_abs() as usize;
            let get = |g: i64| state.at(g);
            let (mut plus, mut minus) = (vec![zero; len], vec![zero; len]);
            for j in 0..len as i64 {
                let k = j as usize;
                if m > 0 {
                    plus[k] = if j >= m { get(j - m).0 } else { get(m - 1 - j).1 * s };
                    minus[k] = get(j + m).1;
                } else {
                    let n = -m;
                    minus[k] = if j >= n { get(j - n).1 } else { get(n - 1 - j).0 * s };
                    plus[k] = get(j + n).0;
                }
            }
            SpinorGridState::new(state.x0, state.h, 0, plus, minus)
        }
        BoundaryCondition::PeriodicShift => {
            let n = state.len();
            let unit = (state.h * T::of_usize(n) - T::one()).abs() <= T::of(1e-12);
            if state.offset != 0 || state.x0 != T::zero() || !unit {
                return Err(Error::invalid(
                    "periodic-shift model needs the unit-interval grid x_j = j/N, j = 0..N",
                ));
            }
            if state.minus.iter().any(|z| *z != zero) {
                return Err(Error::invalid("periodic-shift model is scalar: u₋ must vanish"));
            }
            let plus = (0..n)
                .map(|j| state.plus[(j as i64 + m).rem_euclid(n as i64) as usize])
                .collect();
            SpinorGridState::new(state.x0, state.h, 0, plus, state.minus.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub initial_support: Option<(f64, f64)>,
    pub evolved_support: Option<(f64, f64)>,
    pub elapsed: f64,
    /// How far the evolved support reaches past the initial one (≥ 0).
    pub growth: f64,
    /// c_D·|t|.
    pub speed_bound: f64,
    /// Gap between the two supports, 0 when they overlap.
    pub separation: f64,
    /// Evolved support ⊆ N_{c_D|t| + h}(initial support).
    pub contained: bool,
    /// Amount by which growth exceeds c_D·|t| + h.
    pub violation: f64,
}

pub fn propagation_report<T: Scalar>(
    initial: &SpinorGridState<T>,
    evolved: &SpinorGridState<T>,
    t: T,
    speed: T,
) -> Result<PropagationReport> {
    if initial.h != evolved.h || initial.x0 != evolved.x0 {
        return Err(Error::invalid("initial and evolved states live on different grids"));
    }
    let h = initial.h.to64();
    let to64 = |s: Option<(T, T)>| s.map(|(a, b)| (a.to64(), b.to64()));
    let (i, e) = (to64(initial.support()), to64(evolved.support()));
    let bound = speed.to64() * t.to64().abs();
    let (growth, separation) = match (i, e) {
        (Some((a, b)), Some((c, d))) => ((a - c).max(d - b).max(0.0), (c - b).max(a - d).max(0.0)),
        _ => (0.0, 0.0),
    };
    let slack = 1e-9 * h;
    let violation = (growth - bound - h).max(0.0);
    Ok(PropagationReport {
        initial_support: i,
        evolved_support: e,
        elapsed: t.to64(),
        growth,
        speed_bound: bound,
        separation,
        contained: violation <= slack,
        violation: if violation <= slack { 0.0 } else { violation },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(n: usize, lo: usize, hi: usize) -> Vec<Complex<f64>> {
        (0..n)
            .map(|j| {
                if j > lo && j < hi {
                    let s = (j - lo) as f64 / (hi - lo) as f64;
                    Complex::new((std::f64::consts::PI * s).sin().powi(2), 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                }
            })
            .collect()
    }

    #[test]
    fn free_translation() {
        let h = 0.125;
        let u = SpinorGridState::new(0.0, h, 0, bump(40, 10, 20), bump(40, 10, 20)).unwrap();
        let v = evolve(&u, 1.0, BoundaryCondition::FreeLine).unwrap();
        let (a, b) = u.support().unwrap();
        assert_eq!(v.support(), Some((a - 1.0, b + 1.0)));
        let r = propagation_report(&u, &v, 1.0, 1.0).unwrap();
        assert!(r.contained && (r.growth - 1.0).abs() < 1e-12);
        assert_eq!(u.norm(), v.norm());
        assert!(evolve(&u, 0.0, BoundaryCondition::FreeLine).unwrap().same_field(&u));
        assert!(evolve(&u, 0.3, BoundaryCondition::FreeLine).is_err());
    }

    #[test]
    fn group_law() {
        let u = SpinorGridState::new(0.0, 0.25, 5, bump(30, 3, 12), bump(30, 8, 25)).unwrap();
        for bc in [BoundaryCondition::FreeLine, BoundaryCondition::chirality(-1).unwrap()] {
            let two = evolve(&evolve(&u, 1.5, bc).unwrap(), -0.75, bc).unwrap();
            assert!(two.same_field(&evolve(&u, 0.75, bc).unwrap()));
            let back = evolve(&evolve(&u, 2.0, bc).unwrap(), -2.0, bc).unwrap();
            assert!(back.same_field(&u));
        }
        let p = SpinorGridState::unit_interval(bump(64, 2, 9)).unwrap();
        let bc = BoundaryCondition::PeriodicShift;
        let a = evolve(&evolve(&p, 0.25, bc).unwrap(), 0.5, bc).unwrap();
        assert!(a.same_field(&evolve(&p, 0.75, bc).unwrap()));
    }

    #[test]
    fn chirality_reflects_and_stays_contained() {
        let h = 0.1;
        let zero = vec![Complex::new(0.0, 0.0); 20];
        let u = SpinorGridState::new(0.0, h, 0, zero, bump(20, 2, 8)).unwrap();
        for sign in [1, -1] {
            let bc = BoundaryCondition::chirality(sign).unwrap();
            let v = evolve(&u, 1.2, bc).unwrap();
            // Everything has hit the wall and turned into u₊.
            assert!(v.minus.iter().all(|z| z.norm() == 0.0));
            assert!((u.norm() - v.norm()).abs() <= 1e-12);
            // u₋ at cell j reappears as sign·u₊ at cell 12 − 1 − j.
            assert_eq!(v.plus[11 - 5], u.minus[5] * sign as f64);
            assert!(propagation_report(&u, &v, 1.2, 1.0).unwrap().contained);
        }
        assert!(BoundaryCondition::chirality(0).is_err());
        let off = SpinorGridState::new(0.0, h, -1, vec![Complex::new(1.0, 0.0)], vec![Complex::new(0.0, 0.0)]).unwrap();
        assert!(evolve(&off, h, BoundaryCondition::chirality(1).unwrap()).is_err());
    }

    #[test]
    fn periodic_shift_jumps_across_the_interval() {
        let n = 256;
        let eps = 1.0 / 16.0;
        let u = SpinorGridState::unit_interval(bump(n, 0, n / 16)).unwrap();
        let v = evolve(&u, eps, BoundaryCondition::PeriodicShift).unwrap();
        let (_, hi) = v.support().unwrap();
        assert!(hi > 1.0 - 2.0 / n as f64);
        let r = propagation_report(&u, &v, eps, 1.0).unwrap();
        assert!(!r.contained && r.separation >= 1.0 - 2.0 * eps);
        let two = SpinorGridState::new(0.0, 0.5, 0, bump(4, 0, 3), bump(4, 0, 3)).unwrap();
        assert!(evolve(&two, 0.5, BoundaryCondition::PeriodicShift).is_err());
    }

    #[test]
    fn speed_of_symbols() {
        let unit = DMatrix::from_row_slice(2, 2, &[1.0f64, 0.0, 0.0, -1.0]);
        assert!((propagation_speed(&[unit.clone()]).unwrap() - 1.0).abs() < 1e-15);
        assert!((propagation_speed(&[unit.clone() * 3.0]).unwrap() - 3.0).abs() < 1e-14);
        let samples: Vec<DMatrix<f64>> = (0..=10)
            .map(|i| {
                let x = i as f64 / 10.0;
                let a = 1.0 + 1.5 * (std::f64::consts::PI * x).sin();
                DMatrix::from_row_slice(2, 2, &[a, 0.0, 0.0, -a])
            })
            .collect();
        assert!((propagation_speed(&samples).unwrap() - 2.5).abs() < 1e-14);
        assert!(propagation_speed::<f64>(&[]).is_err());
    }
}
