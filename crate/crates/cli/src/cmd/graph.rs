use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use uflab::graph::{count_ends_with, is_forest, window, GraphPresentation};
use uflab::ufh::{
    classify_k, divergence_one_flow, homology_finite, k0_class_invariant, line_invariant, ClassifyOptions, Side,
};

use super::Ctx;
use crate::defaults as d;
use crate::load;
use crate::report::{CliError, CliResult, Output};

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphCmd {
    /// Integer homology H₀, H₁ of a finite graph.
    Homology { file: PathBuf },
    /// Decide whether K₀ and K₁ of the uniform Roe algebra vanish, with evidence.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = d::FLOW_CAPACITY)]
        capacity: i64,
        /// Comma list, ranges as a-b.
        #[arg(long, default_value = d::FLOW_RADII)]
        flow_radii: String,
        #[arg(long, default_value_t = d::FOLNER_EPSILON)]
        folner_epsilon: f64,
        #[arg(long, default_value = d::FOLNER_RADII)]
        folner_radii: String,
        #[arg(long, default_value_t = d::PROBE_RADIUS)]
        probe_radius: usize,
    },
    /// Number of ends (0, 1, 2 or many).
    Ends {
        file: PathBuf,
        #[arg(long, default_value_t = d::PROBE_RADIUS)]
        radius: usize,
    },
    /// Whether the graph has no cycles, with a cycle when it has one.
    Forest { file: PathBuf },
}

pub fn graph(cmd: &GraphCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        GraphCmd::Homology { file } => {
            let pres = load::graph(&mut ctx.inputs, file)?;
            let GraphPresentation::Finite(g) = &pres else {
                return Err(CliError::invalid(format!(
                    "{}: homology needs a finite graph, got kind {}",
                    file.display(),
                    pres.kind_name()
                )));
            };
            Output::new(homology_finite(g)?)
        }
        GraphCmd::Classify {
            file,
            capacity,
            flow_radii,
            folner_epsilon,
            folner_radii,
            probe_radius,
        } => {
            let pres = load::graph(&mut ctx.inputs, file)?;
            let opts = ClassifyOptions {
                flow_capacity: *capacity,
                flow_radii: load::usize_list(flow_radii, "flow-radii")?,
                folner_epsilon: *folner_epsilon,
                folner_radii: load::usize_list(folner_radii, "folner-radii")?,
                probe_radius: *probe_radius,
            };
            let rep = classify_k(&pres, &opts)?;
            let notes = rep.evidence.notes.clone();
            let mut out = Output::new(rep)?;
            out.warnings.extend(notes);
            Ok(out)
        }
        GraphCmd::Ends { file, radius } => {
            let pres = load::graph(&mut ctx.inputs, file)?;
            let rep = count_ends_with(&pres, *radius)?;
            let exact = rep.exact;
            let out = Output::new(rep)?;
            Ok(if exact { out } else { out.warn("window-generated graph: the end count is a lower bound") })
        }
        GraphCmd::Forest { file } => {
            let pres = load::graph(&mut ctx.inputs, file)?;
            Output::new(is_forest(&pres)?)
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
            SideArg::Both => Side::Both,
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqCmd {
    /// Whether the partial sums from index 0 stay bounded.
    InS {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Class of the sequence modulo bounded-partial-sum sequences.
    Class {
        file: PathBuf,
        /// Line or ray graph the sequence lives on.
        #[arg(long, conflicts_with = "half_line")]
        graph: Option<PathBuf>,
        /// Treat the sequence as living on ℕ₀.
        #[arg(long)]
        half_line: bool,
    },
}

pub fn seq(cmd: &SeqCmd, ctx: &mut Ctx) -> CliResult<Output> {
    match cmd {
        SeqCmd::InS { file, side } => {
            let s = load::sequence(&mut ctx.inputs, file)?;
            Output::new(s.in_s((*side).into()))
        }
        SeqCmd::Class { file, graph, half_line } => {
            let s = load::sequence(&mut ctx.inputs, file)?;
            let inv = match graph {
                Some(g) => {
                    let pres = load::graph(&mut ctx.inputs, g)?;
                    k0_class_invariant(&pres, &s)?
                }
                None if *half_line => line_invariant(&s.restricted_from(0), true),
                None => line_invariant(&s, false),
            };
            Output::new(json!({
                "invariant": inv,
                "is_zero": inv.is_zero(),
            }))
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowCmd {
    /// Bounded integer 1-chain with boundary 1 on the interior of a ball.
    Find {
        file: PathBuf,
        #[arg(long, default_value_t = d::FLOW_RADIUS)]
        radius: usize,
        #[arg(long, default_value_t = d::FLOW_CAPACITY)]
        capacity: i64,
    },
}

pub fn flow(cmd: &FlowCmd, ctx: &mut Ctx) -> CliResult<Output> {
    let FlowCmd::Find { file, radius, capacity } = cmd;
    let pres = load::graph(&mut ctx.inputs, file)?;
    let base = pres.default_base()?;
    let w = window(&pres, &base, *radius)?;
    let cert = divergence_one_flow(&w, *capacity)?;
    let feasible = cert.feasible;
    let out = Output::new(json!({
        "base": base.to_string(),
        "radius": radius,
        "window_vertices": w.vertices().len(),
        "window_edges": w.graph().edge_count(),
        "interior_vertices": w.interior_vertices().len(),
        "certificate": cert,
    }))?;
    Ok(if feasible {
        out
    } else {
        out.warn("no flow within the capacity: the cut lists a set with too little outgoing capacity")
    })
}
