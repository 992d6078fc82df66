use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use uflab::sobolev::{convergence_classify, extend_reflect, reflection_coefficients, torus_schatten_norm};
use uflab::{SchattenResult, TorusEmbeddingSpec};

use super::Ctx;
use crate::defaults as d;
use crate::load;
use crate::report::{CliError, CliResult, Output};

#[derive(Args, Debug, Serialize)]
pub struct TorusArgs {
    /// JSON {n, r, m, t, p, cutoff}; flags given alongside override it.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<u64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SobolevCmd {
    /// Exact reflection coefficients of order k, optionally applied to samples.
    Reflect {
        #[arg(long)]
        k: usize,
        /// CSV with a `value` column of samples on the nonnegative grid.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Reflected points to produce left of 0.
        #[arg(long, default_value_t = d::REFLECT_NEGATIVE)]
        negative: usize,
    },
    /// Schatten p-norm of the embedding H^(s+t) → H^s on a torus.
    TorusSchatten(TorusArgs),
    /// Whether the Schatten p-norm is finite (p > n/t).
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        p: f64,
    },
}

fn torus_spec(a: &TorusArgs, ctx: &mut Ctx) -> CliResult<TorusEmbeddingSpec> {
    let base: Option<serde_json::Value> = match &a.spec {
        Some(path) => {
            let text = ctx.inputs.read_text(path)?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    let field = |name: &str| base.as_ref().and_then(|b| b.get(name)).cloned();
    let missing = |name: &str| CliError::invalid(format!("--{name}: required (flag or spec file field)"));
    let num = |name: &str, flag: Option<f64>| -> CliResult<f64> {
        match flag {
            Some(v) => Ok(v),
            None => field(name)
                .ok_or_else(|| missing(name))?
                .as_f64()
                .ok_or_else(|| CliError::invalid(format!("field {name}: not a number"))),
        }
    };
    let int = |name: &str, flag: Option<u64>| -> CliResult<Option<u64>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => match field(name) {
                None => Ok(None),
                Some(v) => v
                    .as_u64()
                    .map(Some)
                    .ok_or_else(|| CliError::invalid(format!("field {name}: not a nonnegative integer"))),
            },
        }
    };
    let small = |name: &str, v: Option<u64>| -> CliResult<u32> {
        let v = v.ok_or_else(|| missing(name))?;
        u32::try_from(v).map_err(|_| CliError::invalid(format!("field {name}: {v} is too large")))
    };
    Ok(TorusEmbeddingSpec {
        n: small("n", int("n", a.n.map(u64::from))?)?,
        r: num("r", a.r)?,
        m: small("m", int("m", a.m.map(u64::from))?)?,
        t: num("t", a.t)?,
        p: num("p", a.p)?,
        cutoff: int("cutoff", a.cutoff)?.unwrap_or(d::TORUS_CUTOFF),
    })
}

pub fn run(cmd: &SobolevCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        SobolevCmd::Reflect { k, samples, negative } => {
            let rc = reflection_coefficients(*k)?;
            let floats: Vec<f64> = rc.to_float();
            let mut values = json!({
                "order": rc.order,
                "coefficients": serde_json::to_value(&rc).expect("serializes")["coefficients"],
                "coefficients_f64": floats,
            });
            let mut table = None;
            if let Some(path) = samples {
                let xs = load::samples(&mut ctx.inputs, path)?;
                let ext = extend_reflect(&xs, *k, *negative)?;
                let mut csv = String::from("index,value\n");
                for (i, v) in ext.values.iter().enumerate() {
                    csv.push_str(&format!("{},{v:e}\n", i as i64 - ext.negative as i64));
                }
                table = Some(csv);
                values["extension"] = json!({ "first_index": -(ext.negative as i64), "values": ext.values });
            }
            let out = Output::new(values)?;
            Ok(match table {
                Some(t) => out.with_table(t),
                None => out,
            })
        }
        SobolevCmd::TorusSchatten(a) => {
            let spec = torus_spec(a, ctx)?;
            let res = torus_schatten_norm(&spec)?;
            Output::new(match res {
                SchattenResult::Finite {
                    value,
                    tail_bound,
                    partial_sum,
                    tail_sum,
                    cutoff,
                } => json!({
                    "value": value,
                    "tail_bound": tail_bound,
                    "cutoff": cutoff,
                    "divergent": false,
                    "partial_sum": partial_sum,
                    "tail_sum": tail_sum,
                }),
                SchattenResult::Divergent { reason } => json!({
                    "value": null,
                    "tail_bound": null,
                    "cutoff": spec.cutoff,
                    "divergent": true,
                    "reason": reason,
                }),
            })
        }
        SobolevCmd::Classify { n, t, p } => {
            let finite = convergence_classify(*n, *t, *p)?;
            Output::new(json!({ "finite": finite, "threshold": *n as f64 / t }))
        }
    }
}
