use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex;
use serde::Serialize;
use serde_json::json;

use uflab::specops::{
    bounded_transform, cayley, chebyshev_banded, eigensolve, eta, operator_norm, unitarity_residual,
};
use uflab::BandedMatrix;

use super::Ctx;
use crate::defaults as d;
use crate::load;
use crate::report::{CliError, CliResult, Output};

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecCmd {
    /// Eigenvalues of a symmetric matrix, ascending, with the residual.
    Eigen { file: PathBuf },
    /// η(s) = Σ sign(λ)|λ|^(−s) over nonzero eigenvalues.
    Eta {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        /// Absolute zero threshold; default is a fraction of ‖A‖.
        #[arg(long)]
        zero_tol: Option<f64>,
    },
    /// T(1 + T*T)^(−1/2) of a square matrix.
    BoundedTransform { file: PathBuf },
    /// (D − i)(D + i)^(−1) of a symmetric matrix.
    Cayley { file: PathBuf },
    /// Chebyshev approximation f(B) of a banded symmetric matrix.
    Cheb {
        file: PathBuf,
        #[arg(long)]
        band: usize,
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum)]
        function: Func,
        /// Interval a,b containing the spectrum; default ±‖B‖.
        #[arg(long)]
        interval: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Tanh,
    /// exp(−x²)
    Gaussian,
}

impl Func {
    fn eval(self, x: f64) -> f64 {
        match self {
            Func::Exp => x.exp(),
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tanh => x.tanh(),
            Func::Gaussian => (-x * x).exp(),
        }
    }
}

fn interval(text: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::invalid(format!("--interval: '{text}' is not a,b"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn complex_rows(m: &DMatrix<Complex<f64>>) -> serde_json::Value {
    let part = |f: fn(&Complex<f64>) -> f64| -> Vec<Vec<f64>> {
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect()
    };
    json!({ "re": part(|z| z.re), "im": part(|z| z.im) })
}

pub fn run(cmd: &SpecCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        SpecCmd::Eigen { file } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let spec = eigensolve(&a)?;
            let values: Vec<f64> = spec.eigenvalues.iter().copied().collect();
            let mut csv = String::from("value\n");
            for v in &values {
                csv.push_str(&format!("{v:e}\n"));
            }
            Ok(Output::new(json!({
                "order": spec.order(),
                "eigenvalues": values,
                "norm": spec.norm(),
                "residual": spec.residual,
            }))?
            .with_table(csv))
        }
        SpecCmd::Eta { file, s, zero_tol } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let spec = eigensolve(&a)?;
            let z = zero_tol.unwrap_or(d::ETA_ZERO_FRACTION * spec.norm());
            let dropped = spec.eigenvalues.iter().filter(|l| l.abs() <= z).count();
            let out = Output::new(json!({
                "s": s,
                "eta": eta(&spec, *s, Some(z)),
                "zero_tol": z,
                "zero_eigenvalues": dropped,
            }))?;
            Ok(if dropped > 0 {
                out.warn(format!("{dropped} eigenvalue(s) within {z:e} of zero were left out"))
            } else {
                out
            })
        }
        SpecCmd::BoundedTransform { file } => {
            let t = load::matrix(&mut ctx.inputs, file)?;
            let b = bounded_transform(&t)?;
            Ok(Output::new(json!({
                "order": b.nrows(),
                "matrix": load::matrix_rows(&b),
                "norm": operator_norm(&b),
            }))?
            .with_table(load::matrix_csv(&b)))
        }
        SpecCmd::Cayley { file } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let u = cayley(&a)?;
            Output::new(json!({
                "order": u.nrows(),
                "matrix": complex_rows(&u),
                "unitarity_residual": unitarity_residual(&u),
            }))
        }
        SpecCmd::Cheb {
            file,
            band,
            degree,
            function,
            interval: iv,
        } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let name = file.display().to_string();
            let m = BandedMatrix::new(a.into_matrix(), *band).map_err(|e| CliError::from(e).context(&name))?;
            let (lo, hi) = match iv {
                Some(t) => interval(t)?,
                None => {
                    let r = operator_norm(m.matrix()).max(f64::EPSILON);
                    (-r, r)
                }
            };
            let f = *function;
            let (p, bound) = chebyshev_banded(&m, move |x| f.eval(x), *degree, (lo, hi))?;
            Ok(Output::new(json!({
                "degree": degree,
                "interval": [lo, hi],
                "band": p.band(),
                "measured_band": p.measured_band(),
                "error_bound": bound,
                "matrix": load::matrix_rows(p.matrix()),
            }))?
            .with_table(load::matrix_csv(p.matrix())))
        }
    }
}
