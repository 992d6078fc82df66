use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chain::{boundary1, Chain1, ChainRepr};
use super::flow::divergence_one_flow;
use super::sequence::{line_invariant, EventuallyPeriodicSequence, K0LineClassInvariant};
use crate::error::{Error, Result};
use crate::graph::{
    count_ends_with, drifting_cycle, find_cycle, is_connected, is_forest, window, Cycle, EdgeKey, Ends,
    EndsReport, GraphPresentation, PeriodicEdge, Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Uniform capacity for divergence-one flows.
    pub flow_capacity: i64,
    /// Window radii on which a flow must exist for a nonamenability verdict.
    pub flow_radii: Vec<usize>,
    /// Følner threshold: a ball with boundary/volume below this is amenability evidence.
    pub folner_epsilon: f64,
    pub folner_radii: Vec<usize>,
    /// Outer radius for window-based end and cycle probes.
    pub probe_radius: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            flow_capacity: 2,
            flow_radii: (2..=6).collect(),
            folner_epsilon: 0.2,
            folner_radii: (1..=16).collect(),
            probe_radius: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FolnerWitness {
    pub base: Vertex,
    pub radius: usize,
    pub boundary: usize,
    pub volume: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowSummary {
    pub radius: usize,
    pub capacity: i64,
    pub interior: i64,
    pub max_flow: i64,
    pub feasible: bool,
}

/// Nonzero bounded 1-cycle proving K₁ ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum K1Witness {
    /// ±1 around a circuit.
    Circuit {
        cycle: Cycle,
        chain: Vec<(EdgeKey, i64)>,
    },
    /// Periodic ±1 chain along a bi-infinite path (one sequence per edge orbit).
    TwoEndedPath {
        orbits: Vec<EventuallyPeriodicSequence>,
    },
    /// Ends report only; no explicit chain is produced.
    Ends { ends: EndsReport },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub folner: Option<FolnerWitness>,
    pub flows: Vec<FlowSummary>,
    pub forest: Option<bool>,
    pub ends: Option<EndsReport>,
    pub k1_witness: Option<K1Witness>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KReport {
    pub k0_zero: Answer,
    pub k1_zero: Answer,
    pub evidence: Evidence,
}

/// ±1 values around a cycle certificate, aligned with its first edge.
pub fn circuit_chain(c: &Cycle) -> Vec<(EdgeKey, i64)> {
    let dir = |i: usize| {
        if c.edges[i].source == c.vertices[i] {
            1
        } else {
            -1
        }
    };
    let d0 = dir(0);
    (0..c.len()).map(|i| (c.edges[i].clone(), dir(i) * d0)).collect()
}

pub fn circuit_chain1(c: &Cycle) -> Chain1 {
    Chain1::new(ChainRepr::Sparse(circuit_chain(c).into_iter().collect::<BTreeMap<_, _>>()))
}

/// Periodic cycle along a two-ended periodic tree: the lift of a quotient
/// cycle with nonzero shift.
fn two_ended_witness(cell_vertices: usize, edges: &[PeriodicEdge]) -> Option<Vec<EventuallyPeriodicSequence>> {
    let (walk, sigma) = drifting_cycle(cell_vertices, edges)?;
    // Accumulate ±1 per (edge orbit, source cell mod |σ|), sign relative to
    // the traversal direction.
    let p = sigma.unsigned_abs() as usize;
    let mut vals = vec![vec![0i64; p]; edges.len()];
    let mut cell = 0i64;
    for (i, fwd) in walk {
        let s = edges[i].shift;
        let src_cell = if fwd { cell } else { cell - s };
        vals[i][src_cell.rem_euclid(p as i64) as usize] += if fwd { 1 } else { -1 };
        cell = if fwd { cell + s } else { cell - s };
    }
    Some(vals.into_iter().map(EventuallyPeriodicSequence::periodic).collect())
}

fn folner_search(pres: &GraphPresentation, opts: &ClassifyOptions) -> Result<Option<FolnerWitness>> {
    let base = pres.default_base()?;
    for &r in &opts.folner_radii {
        let w = window(pres, &base, r)?;
        let ratio = w.boundary_ratio();
        if ratio < opts.folner_epsilon {
            return Ok(Some(FolnerWitness {
                base: base.clone(),
                radius: r,
                boundary: w.boundary_vertices().len(),
                volume: w.vertices().len(),
                ratio,
            }));
        }
    }
    Ok(None)
}

/// Decides whether K₀ and K₁ of a connected graph vanish, with evidence.
pub fn classify_k(pres: &GraphPresentation, opts: &ClassifyOptions) -> Result<KReport> {
    if !is_connected(pres)? {
        return Err(Error::invalid("classification needs a connected graph"));
    }
    let mut ev = Evidence {
        folner: folner_search(pres, opts)?,
        flows: Vec::new(),
        forest: None,
        ends: None,
        k1_witness: None,
        notes: Vec::new(),
    };
    let base = pres.default_base()?;
    let mut all_feasible = !opts.flow_radii.is_empty();
    for &r in &opts.flow_radii {
        let w = window(pres, &base, r)?;
        if w.interior_vertices().is_empty() || w.boundary_vertices().is_empty() {
            // Exhausted finite graph: no mass can leave, so no flow exists.
            all_feasible = false;
            continue;
        }
        let cert = divergence_one_flow(&w, opts.flow_capacity)?;
        all_feasible &= cert.feasible;
        ev.flows.push(FlowSummary {
            radius: r,
            capacity: opts.flow_capacity,
            interior: cert.demand,
            max_flow: cert.max_flow,
            feasible: cert.feasible,
        });
    }
    let k0_zero = match (ev.folner.is_some(), all_feasible) {
        (true, false) => Answer::No,
        (false, true) => Answer::Yes,
        (true, true) => {
            // Flows only certify the radii they were run at. A Følner set
            // past all of them outweighs them; otherwise it is a genuine tie.
            let far = opts.flow_radii.iter().max().copied().unwrap_or(0);
            let fr = ev.folner.as_ref().map_or(0, |f| f.radius);
            if fr > far {
                ev.notes.push(format!(
                    "flows feasible up to radius {far}, but a Følner set appears at radius {fr}"
                ));
                Answer::No
            } else {
                ev.notes
                    .push("Følner witness and flow certificates disagree; enlarge the window family".into());
                Answer::Unknown
            }
        }
        (false, false) => Answer::Unknown,
    };

    let k1_zero = match pres {
        GraphPresentation::WindowGenerated(_) => {
            let w = window(pres, &base, opts.probe_radius)?;
            if let Some(steps) = find_cycle(w.graph()) {
                let cycle = Cycle {
                    vertices: steps.iter().map(|&(v, _)| w.vertices()[v].clone()).collect(),
                    edges: steps.iter().map(|&(_, e)| w.edge_keys()[e].clone()).collect(),
                };
                let chain = circuit_chain(&cycle);
                ev.k1_witness = Some(K1Witness::Circuit { cycle, chain });
                Answer::No
            } else {
                let ends = count_ends_with(pres, opts.probe_radius)?;
                ev.ends = Some(ends.clone());
                if ends.ends >= Ends::Two {
                    ev.k1_witness = Some(K1Witness::Ends { ends });
                    Answer::No
                } else {
                    ev.notes
                        .push("no cycle in the probe window and fewer than two ends seen".into());
                    Answer::Unknown
                }
            }
        }
        _ => {
            let forest = is_forest(pres)?;
            ev.forest = Some(forest.is_forest);
            let ends = count_ends_with(pres, opts.probe_radius)?;
            ev.ends = Some(ends.clone());
            if let Some(cycle) = forest.cycle {
                let chain = circuit_chain(&cycle);
                debug_assert_eq!(
                    boundary1(pres, &circuit_chain1(&cycle)).map(|b| b.bound()),
                    Ok(0)
                );
                ev.k1_witness = Some(K1Witness::Circuit { cycle, chain });
                Answer::No
            } else if ends.ends.at_most_one() {
                Answer::Yes
            } else {
                ev.k1_witness = Some(match pres {
                    GraphPresentation::LinePeriodic {
                        cell_vertices,
                        edges,
                    } => two_ended_witness(*cell_vertices, edges)
                        .map(|orbits| K1Witness::TwoEndedPath { orbits })
                        .unwrap_or(K1Witness::Ends { ends }),
                    _ => K1Witness::Ends { ends },
                });
                Answer::No
            }
        }
    };
    Ok(KReport {
        k0_zero,
        k1_zero,
        evidence: ev,
    })
}

/// Class invariant of a 0-chain on a one-vertex-per-cell line or ray.
pub fn k0_class_invariant(
    pres: &GraphPresentation,
    b: &EventuallyPeriodicSequence,
) -> Result<K0LineClassInvariant> {
    match pres {
        GraphPresentation::LinePeriodic { cell_vertices: 1, .. } => Ok(line_invariant(b, false)),
        GraphPresentation::RayPeriodic {
            cell_vertices: 1,
            head,
            ..
        } if head.vertex_count() == 0 => Ok(line_invariant(&b.restricted_from(0), true)),
        GraphPresentation::LinePeriodic { .. } | GraphPresentation::RayPeriodic { .. } => Err(
            Error::unsupported("class invariants need one vertex per cell and no head"),
        ),
        _ => Err(Error::unsupported("class invariants are defined for line and ray presentations")),
    }
}
