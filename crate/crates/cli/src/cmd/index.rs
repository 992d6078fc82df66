use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use uflab::index::{
    aps_positive_count, compressed_index_with, momentum_symbol, pm_index_with, rho_aps_consistency, rho_projection,
    spectral_flow, symbol_samples, winding_number, WindowIndexResult,
};
use uflab::specops::eigensolve;
use uflab::{ApsModel, MatrixPath, NormalizingFunction, PmModel, SymMatrix};

use super::Ctx;
use crate::defaults as d;
use crate::load;
use crate::report::{CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Chi {
    SmoothSign,
    ChebyshevSign,
}

#[derive(Args, Debug, Serialize)]
pub struct ChiArgs {
    #[arg(long, value_enum, default_value_t = Chi::SmoothSign)]
    pub chi: Chi,
    /// Chebyshev degree for `--chi chebyshev-sign`.
    #[arg(long, default_value_t = d::CHEB_SIGN_DEGREE)]
    pub degree: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ApsArgs {
    #[arg(long, default_value_t = d::APS_HORIZON)]
    pub horizon: f64,
    #[arg(long, default_value_t = d::APS_STEP)]
    pub step: f64,
    #[arg(long, default_value_t = d::APS_DIVERGENCE)]
    pub divergence: f64,
    #[arg(long, default_value_t = d::APS_STABILITY)]
    pub stability: f64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexCmd {
    /// Stabilized index of compressions of a unitary line operator.
    Compressed {
        /// JSON {band, diagonals}.
        file: PathBuf,
        #[arg(long, default_value = d::INDEX_WINDOWS)]
        windows: String,
    },
    /// Index of the compressed Cayley transform of a self-adjoint operator.
    Pm {
        /// Real symmetric banded line operator, JSON {band, diagonals}.
        #[arg(long, conflicts_with = "momentum")]
        banded: Option<PathBuf>,
        /// Use the discrete momentum multiplier −cot(θ/2).
        #[arg(long)]
        momentum: bool,
        #[arg(long, default_value_t = d::SYMBOL_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = d::PM_COPIES)]
        copies: usize,
        #[arg(long, default_value = d::INDEX_WINDOWS)]
        windows: String,
    },
    /// Spectral flow along the piecewise-linear path through the given matrices.
    Flow {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = d::FLOW_STEPS)]
        steps: usize,
    },
    /// Count of L² solutions of ∂ₜ + A on the half-cylinder.
    Aps {
        file: PathBuf,
        #[command(flatten)]
        aps: ApsArgs,
    },
    /// Projection (1 + χ(D))/2.
    Rho {
        file: PathBuf,
        /// Gap c; default the smallest |λ|.
        #[arg(long)]
        gap: Option<f64>,
        #[command(flatten)]
        chi: ChiArgs,
    },
    /// Whether the projection matches the half-cylinder count and subspace.
    Consistency {
        file: PathBuf,
        #[command(flatten)]
        chi: ChiArgs,
        #[command(flatten)]
        aps: ApsArgs,
    },
}

fn chi_fn(a: &ChiArgs, gap: f64) -> CliResult<NormalizingFunction> {
    Ok(match a.chi {
        Chi::SmoothSign => NormalizingFunction::smooth_sign(gap)?,
        Chi::ChebyshevSign => NormalizingFunction::chebyshev_sign(a.degree, gap)?,
    })
}

fn aps_model(a: &SymMatrix, args: &ApsArgs) -> ApsModel {
    let mut m = ApsModel::new(a.clone());
    m.horizon = args.horizon;
    m.step = args.step;
    m.divergence_threshold = args.divergence;
    m.stability_tol = args.stability;
    m
}

fn smallest_abs(a: &SymMatrix) -> CliResult<f64> {
    let spec = eigensolve(a)?;
    Ok(spec.eigenvalues.iter().fold(f64::INFINITY, |g, l| g.min(l.abs())))
}

fn index_output(r: WindowIndexResult, extra: serde_json::Value) -> CliResult<Output> {
    let unstable = r.stabilized_index.value().is_none();
    let mut v = serde_json::to_value(&r).expect("serializes");
    if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
        obj.extend(more);
    }
    let mut out = Output::new(v)?;
    if unstable {
        out = out.warn("the last three windows disagree");
    }
    Ok(out)
}

pub fn run(cmd: &IndexCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        IndexCmd::Compressed { file, windows } => {
            let u = load::line_operator(&mut ctx.inputs, file)?;
            let ws = load::usize_list(windows, "windows")?;
            let frac = ctx.tol_or(d::INDEX_NULL_FRACTION);
            let r = compressed_index_with(&u, &ws, frac)?;
            let w = winding_number(&symbol_samples(&u, d::SYMBOL_SAMPLES))?;
            index_output(r, json!({ "winding_number": w }))
        }
        IndexCmd::Pm {
            banded,
            momentum,
            samples,
            copies,
            windows,
        } => {
            let ws = load::usize_list(windows, "windows")?;
            let model = match (banded, momentum) {
                (Some(path), false) => PmModel::Banded(load::line_operator(&mut ctx.inputs, path)?),
                (None, true) => PmModel::Symbol {
                    d: momentum_symbol,
                    samples: *samples,
                    copies: *copies,
                },
                _ => return Err(CliError::invalid("index pm: give exactly one of --banded FILE or --momentum")),
            };
            let frac = ctx.tol_or(d::INDEX_NULL_FRACTION);
            index_output(pm_index_with(&model, &ws, frac)?, json!({}))
        }
        IndexCmd::Flow { files, steps } => {
            let tol = d::SYMMETRY_TOL;
            let mut pts = Vec::with_capacity(files.len());
            for f in files {
                pts.push(load::symmetric(&mut ctx.inputs, f, tol)?);
            }
            let mut path: Option<MatrixPath> = None;
            for (i, pair) in pts.windows(2).enumerate() {
                let (a, b) = (pair[0].matrix().clone(), pair[1].matrix().clone());
                if a.shape() != b.shape() {
                    return Err(CliError::invalid(format!(
                        "{}: order {} differs from the previous sample's {}",
                        files[i + 1].display(),
                        b.nrows(),
                        a.nrows()
                    )));
                }
                let seg = MatrixPath::sample(0.0, 1.0, (*steps).max(1), |s| {
                    SymMatrix::with_tolerance(&a * (1.0 - s) + &b * s, tol)
                })?;
                path = Some(match path {
                    None => seg,
                    Some(p) => p.concat(&seg)?,
                });
            }
            let path = path.expect("at least two samples");
            let zero = ctx.tol_or(d::FLOW_ZERO_TOL);
            let rep = spectral_flow(&path, zero)?;
            let warns = rep.warnings.clone();
            let mut out = Output::new(rep)?;
            out.warnings.extend(warns);
            Ok(out)
        }
        IndexCmd::Aps { file, aps } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let count = aps_positive_count(&aps_model(&a, aps))?;
            let agree = count.agree;
            let out = Output::new(count)?;
            Ok(if agree {
                out
            } else {
                out.warn("quadrature and eigenvalue counts differ")
            })
        }
        IndexCmd::Rho { file, gap, chi } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let c = match gap {
                Some(c) => *c,
                None => smallest_abs(&a)?,
            };
            let f = chi_fn(chi, c * (1.0 - d::CHI_GAP_MARGIN))?;
            let p = rho_projection(&a, c, &f)?;
            Ok(Output::new(json!({
                "gap": c,
                "normalizing_function": f.name(),
                "trace": p.trace(),
                "matrix": load::matrix_rows(&p),
            }))?
            .with_table(load::matrix_csv(&p)))
        }
        IndexCmd::Consistency { file, chi, aps } => {
            let tol = ctx.tol_or(d::SYMMETRY_TOL);
            let a = load::symmetric(&mut ctx.inputs, file, tol)?;
            let c = smallest_abs(&a)?;
            let f = chi_fn(chi, c * (1.0 - d::CHI_GAP_MARGIN))?;
            let rep = rho_aps_consistency(&aps_model(&a, aps), &f)?;
            if !rep.consistent {
                let residual = (rep.trace - rep.aps_count as f64).abs().max(rep.max_angle);
                return Err(CliError::numerical(
                    format!(
                        "projection and half-cylinder count disagree: trace {} vs count {}, max angle {:e}",
                        rep.trace, rep.aps_count, rep.max_angle
                    ),
                    residual,
                ));
            }
            Output::new(rep)
        }
    }
}
