use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sequence::EventuallyPeriodicSequence;
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, GraphPresentation, PeriodicEdge, Vertex};

/// Storage of a uniformly finite chain.
///
/// * `Dense`: one value per vertex (or edge id) of a finite graph.
/// * `Periodic`: one sequence per cell-local vertex (or edge orbit), indexed
///   by cell; edge orbits are indexed by the cell of their source. `head`
///   holds head vertices, or head edges followed by head links.
/// * `Sparse`: finitely supported, keyed by global names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainRepr<K: Ord> {
    Dense(Vec<i64>),
    Periodic {
        head: Vec<i64>,
        orbits: Vec<EventuallyPeriodicSequence>,
    },
    Sparse(BTreeMap<K, i64>),
}

/// Integer chain with its uniform bound sup |coefficient|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain<K: Ord> {
    repr: ChainRepr<K>,
    bound: i64,
}

pub type Chain0 = Chain<Vertex>;
pub type Chain1 = Chain<EdgeKey>;

impl<K: Ord> Chain<K> {
    pub fn new(repr: ChainRepr<K>) -> Self {
        let bound = match &repr {
            ChainRepr::Dense(v) => v.iter().map(|x| x.abs()).max().unwrap_or(0),
            ChainRepr::Periodic { head, orbits } => head
                .iter()
                .map(|x| x.abs())
                .chain(orbits.iter().map(|s| s.sup_norm()))
                .max()
                .unwrap_or(0),
            ChainRepr::Sparse(m) => m.values().map(|x| x.abs()).max().unwrap_or(0),
        };
        Chain { repr, bound }
    }

    pub fn dense(values: Vec<i64>) -> Self {
        Self::new(ChainRepr::Dense(values))
    }

    pub fn repr(&self) -> &ChainRepr<K> {
        &self.repr
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn as_dense(&self) -> Option<&[i64]> {
        match &self.repr {
            ChainRepr::Dense(v) => Some(v),
            _ => None,
        }
    }
}

impl Chain0 {
    pub fn at(&self, v: &Vertex) -> i64 {
        match (&self.repr, v) {
            (ChainRepr::Dense(d), Vertex::Index(i)) => d.get(*i).copied().unwrap_or(0),
            (ChainRepr::Periodic { orbits, .. }, Vertex::Cell { cell, local }) => {
                orbits.get(*local).map_or(0, |s| s.value(*cell))
            }
            (ChainRepr::Periodic { head, .. }, Vertex::Head(h)) => head.get(*h).copied().unwrap_or(0),
            (ChainRepr::Sparse(m), v) => m.get(v).copied().unwrap_or(0),
            _ => 0,
        }
    }
}

impl Chain1 {
    pub fn at(&self, k: &EdgeKey) -> i64 {
        match (&self.repr, &k.source) {
            (ChainRepr::Dense(d), Vertex::Index(_)) => d.get(k.slot).copied().unwrap_or(0),
            (ChainRepr::Periodic { orbits, .. }, Vertex::Cell { cell, .. }) => {
                orbits.get(k.slot).map_or(0, |s| s.value(*cell))
            }
            (ChainRepr::Periodic { head, .. }, Vertex::Head(_)) => head.get(k.slot).copied().unwrap_or(0),
            (ChainRepr::Sparse(m), _) => m.get(k).copied().unwrap_or(0),
            _ => 0,
        }
    }
}

/// Dense boundary on a finite graph: (∂c)_v = Σ_{t(e)=v} c_e − Σ_{s(e)=v} c_e.
pub fn boundary_dense(vertex_count: usize, edges: &[(usize, usize)], c: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; vertex_count];
    for (&(s, t), &x) in edges.iter().zip(c) {
        out[t] += x;
        out[s] -= x;
    }
    out
}

fn periodic_boundary(
    cell_vertices: usize,
    edges: &[PeriodicEdge],
    orbits: &[EventuallyPeriodicSequence],
    ray: bool,
) -> Vec<EventuallyPeriodicSequence> {
    let mut out = vec![EventuallyPeriodicSequence::default(); cell_vertices];
    for (e, c) in edges.iter().zip(orbits) {
        // On a ray only copies with both endpoints in cells >= 0 exist.
        let c = if ray {
            c.restricted_from(0.max(-e.shift))
        } else {
            c.clone()
        };
        out[e.target] = out[e.target].add(&c.translated(e.shift));
        out[e.source] = out[e.source].sub(&c);
    }
    out
}

/// ∂₁ for any presentation. Sparse chains stay sparse; periodic chains stay
/// periodic. Output bound is at most the degree bound times the input bound.
pub fn boundary1(pres: &GraphPresentation, chain: &Chain1) -> Result<Chain0> {
    let mismatch = || Error::invalid("chain representation does not match the presentation");
    match (pres, chain.repr()) {
        (_, ChainRepr::Sparse(m)) => {
            let mut out: BTreeMap<Vertex, i64> = BTreeMap::new();
            for (k, &x) in m {
                *out.entry(k.target.clone()).or_default() += x;
                *out.entry(k.source.clone()).or_default() -= x;
            }
            out.retain(|_, x| *x != 0);
            Ok(Chain::new(ChainRepr::Sparse(out)))
        }
        (GraphPresentation::Finite(g), ChainRepr::Dense(c)) => {
            if c.len() != g.edge_count() {
                return Err(Error::invalid(format!(
                    "chain has {} coefficients for {} edges",
                    c.len(),
                    g.edge_count()
                )));
            }
            Ok(Chain::dense(boundary_dense(g.vertex_count(), g.edges(), c)))
        }
        (
            GraphPresentation::LinePeriodic {
                cell_vertices,
                edges,
            },
            ChainRepr::Periodic { orbits, .. },
        ) => {
            if orbits.len() != edges.len() {
                return Err(mismatch());
            }
            Ok(Chain::new(ChainRepr::Periodic {
                head: Vec::new(),
                orbits: periodic_boundary(*cell_vertices, edges, orbits, false),
            }))
        }
        (
            GraphPresentation::RayPeriodic {
                head,
                cell_vertices,
                edges,
                links,
            },
            ChainRepr::Periodic {
                head: hc,
                orbits,
            },
        ) => {
            if orbits.len() != edges.len() || hc.len() != head.edge_count() + links.len() {
                return Err(mismatch());
            }
            let mut hv = boundary_dense(head.vertex_count(), head.edges(), &hc[..head.edge_count()]);
            let mut cells = periodic_boundary(*cell_vertices, edges, orbits, true);
            for (l, &x) in links.iter().zip(&hc[head.edge_count()..]) {
                hv[l.head] -= x;
                let bump = EventuallyPeriodicSequence::delta(l.cell as i64).scale(x);
                cells[l.local] = cells[l.local].add(&bump);
            }
            Ok(Chain::new(ChainRepr::Periodic {
                head: hv,
                orbits: cells.iter().map(|s| s.restricted_from(0)).collect(),
            }))
        }
        _ => Err(mismatch()),
    }
}
