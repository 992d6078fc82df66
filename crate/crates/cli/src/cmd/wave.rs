use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use uflab::wave::{aliasing_error_bound, bandlimited_calculus, evolve, propagation_report, BoundaryCondition};
use uflab::{BandlimitedInput, SpinorGridState, TranslationModel};

use super::Ctx;
use crate::defaults as d;
use crate::load;
use crate::report::{CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Whole line, no boundary.
    Free,
    ChiralityPlus,
    ChiralityMinus,
    /// Unit interval with u(1) = u(0).
    Periodic,
}

impl From<Boundary> for BoundaryCondition {
    fn from(b: Boundary) -> Self {
        match b {
            Boundary::Free => BoundaryCondition::FreeLine,
            Boundary::ChiralityPlus => BoundaryCondition::Chirality { sign: 1 },
            Boundary::ChiralityMinus => BoundaryCondition::Chirality { sign: -1 },
            Boundary::Periodic => BoundaryCondition::PeriodicShift,
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaveCmd {
    /// Exact evolution of a two-component grid state by time t.
    Evolve {
        /// CSV index,re_plus,im_plus,re_minus,im_minus.
        file: PathBuf,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Boundary::Free)]
        boundary: Boundary,
    },
    /// Support growth between two states against the propagation speed.
    Report {
        initial: PathBuf,
        evolved: PathBuf,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = d::WAVE_SPEED)]
        speed: f64,
    },
    /// f(D) on a periodic grid from samples of f̂ supported in [−R, R].
    Bandlimited {
        /// CSV t,re,im of f̂ at equally spaced nodes.
        file: PathBuf,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        h: f64,
        /// Support radius R; default max |t|.
        #[arg(long)]
        radius: Option<f64>,
        /// Node spacing Δt; default from the first two nodes.
        #[arg(long)]
        step: Option<f64>,
        /// ‖f̂‖₁ and ‖t⁴f̂‖₁, for the aliasing bound.
        #[arg(long, requires = "l1_fourth")]
        l1: Option<f64>,
        #[arg(long, requires = "l1")]
        l1_fourth: Option<f64>,
    },
}

fn state_csv(s: &SpinorGridState) -> CliResult<String> {
    let mut buf = Vec::new();
    s.write_csv(&mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV is UTF-8"))
}

fn state_summary(s: &SpinorGridState) -> serde_json::Value {
    json!({
        "offset": s.offset,
        "len": s.len(),
        "norm": s.norm(),
        "support": s.support(),
    })
}

pub fn run(cmd: &WaveCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        WaveCmd::Evolve {
            file,
            h,
            x0,
            t,
            boundary,
        } => {
            let init = load::state(&mut ctx.inputs, file, *x0, *h)?;
            let out = evolve(&init, *t, (*boundary).into())?;
            let table = state_csv(&out)?;
            let rows: Vec<serde_json::Value> = (0..out.len())
                .map(|i| {
                    let (p, m) = (out.plus[i], out.minus[i]);
                    json!([out.offset + i as i64, p.re, p.im, m.re, m.im])
                })
                .collect();
            let drift = (out.norm() - init.norm()).abs();
            Ok(Output::new(json!({
                "t": t,
                "initial": state_summary(&init),
                "evolved": state_summary(&out),
                "norm_drift": drift,
                "columns": ["index", "re_plus", "im_plus", "re_minus", "im_minus"],
                "state": rows,
            }))?
            .with_table(table))
        }
        WaveCmd::Report {
            initial,
            evolved,
            h,
            x0,
            t,
            speed,
        } => {
            let a = load::state(&mut ctx.inputs, initial, *x0, *h)?;
            let b = load::state(&mut ctx.inputs, evolved, *x0, *h)?;
            let rep = propagation_report(&a, &b, *t, *speed)?;
            let contained = rep.contained;
            let out = Output::new(rep)?;
            Ok(if contained { out } else { out.warn("evolved support exceeds the speed bound") })
        }
        WaveCmd::Bandlimited {
            file,
            points,
            h,
            radius,
            step,
            l1,
            l1_fourth,
        } => {
            let nodes = load::nodes(&mut ctx.inputs, file)?;
            let radius = radius.unwrap_or_else(|| nodes.iter().fold(0.0, |r: f64, (t, _)| r.max(t.abs())));
            let step = match step {
                Some(s) => *s,
                None if nodes.len() >= 2 => nodes[1].0 - nodes[0].0,
                None => {
                    return Err(CliError::invalid(format!(
                        "{}: one node gives no spacing, pass --step",
                        file.display()
                    )))
                }
            };
            let model = TranslationModel { points: *points, h: *h };
            let input = BandlimitedInput { radius, step, nodes };
            let (m, report) = bandlimited_calculus(&model, &input)?;
            let bound = match (l1, l1_fourth) {
                (Some(a), Some(b)) => Some(aliasing_error_bound(&model, step, *a, *b)),
                _ => None,
            };
            let row: Vec<[f64; 2]> = (0..m.ncols()).map(|j| [m[(0, j)].re, m[(0, j)].im]).collect();
            let certified = report.certified;
            let out = Output::new(json!({
                "radius": radius,
                "step": step,
                "band": report,
                "aliasing_bound": bound,
                "first_row": row,
            }))?;
            Ok(if certified { out } else { out.warn("band exceeds the finite-propagation bound") })
        }
    }
}
