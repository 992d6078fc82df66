use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier, shared by every presentation kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    /// Vertex of a finite graph.
    Index(usize),
    /// Vertex of the head fragment of a ray-periodic graph.
    Head(usize),
    /// Copy of a cell-local vertex in the given cell.
    Cell { cell: i64, local: usize },
    /// Regular tree vertex, addressed by its child choices from the root.
    Word(Vec<u32>),
    /// Square lattice point.
    Lattice(i64, i64),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Index(i) => write!(f, "{i}"),
            Vertex::Head(i) => write!(f, "h{i}"),
            Vertex::Cell { cell, local } => write!(f, "{local}@{cell}"),
            Vertex::Word(w) => {
                write!(f, "w[")?;
                for (i, c) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Vertex::Lattice(x, y) => write!(f, "({x},{y})"),
        }
    }
}

/// Globally unique name of a directed edge: its source, its target and a
/// slot distinguishing parallel edges leaving the same source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeKey {
    pub source: Vertex,
    pub target: Vertex,
    pub slot: usize,
}

/// One end of an edge as seen from a vertex. Self-loops produce two
/// incidences, one outgoing and one incoming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub key: EdgeKey,
    pub other: Vertex,
    pub outgoing: bool,
}

impl Incidence {
    fn out(source: Vertex, target: Vertex, slot: usize) -> Self {
        Incidence {
            other: target.clone(),
            key: EdgeKey {
                source,
                target,
                slot,
            },
            outgoing: true,
        }
    }

    fn inc(source: Vertex, target: Vertex, slot: usize) -> Self {
        Incidence {
            other: source.clone(),
            key: EdgeKey {
                source,
                target,
                slot,
            },
            outgoing: false,
        }
    }
}

/// Finite directed multigraph. Self-loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl FiniteGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incident = vec![Vec::new(); vertex_count];
        for (id, &(s, t)) in edges.iter().enumerate() {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::invalid(format!(
                    "edges[{id}] = ({s}, {t}) references a vertex outside 0..{vertex_count}"
                )));
            }
            incident[s].push(id);
            if t != s {
                incident[t].push(id);
            }
        }
        Ok(FiniteGraph {
            vertex_count,
            edges,
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// Edge ids touching `v`, each listed once (self-loops included once).
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Undirected degree; a self-loop contributes two.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&e| if self.edges[e].0 == self.edges[e].1 { 2 } else { 1 })
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }
}

/// Edge orbit of a periodic presentation: local `source` in cell `n` is
/// joined to local `target` in cell `n + shift`. Shift 0 is an intra-cell edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicEdge {
    pub source: usize,
    pub target: usize,
    pub shift: i64,
}

/// Edge from a head vertex of a ray to a cell-local vertex in cell `cell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadLink {
    pub head: usize,
    pub local: usize,
    pub cell: u64,
}

/// Vertex-to-incidences rule for graphs that are only available window by
/// window. Implementations must be pure and must list every edge from both
/// endpoints with the same [`EdgeKey`].
pub trait EdgeRule: Send + Sync {
    fn root(&self) -> Vertex;
    fn incident(&self, v: &Vertex) -> Result<Vec<Incidence>>;
    fn describe(&self) -> String;
}

/// The d-regular tree. The root has `d` children, every other vertex `d - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularTree {
    pub degree: u32,
}

impl EdgeRule for RegularTree {
    fn root(&self) -> Vertex {
        Vertex::Word(Vec::new())
    }

    fn incident(&self, v: &Vertex) -> Result<Vec<Incidence>> {
        let Vertex::Word(word) = v else {
            return Err(Error::invalid(format!("{v} is not a tree vertex")));
        };
        let children = if word.is_empty() {
            self.degree
        } else {
            self.degree - 1
        };
        if word.first().is_some_and(|&c| c >= self.degree)
            || word.iter().skip(1).any(|&c| c >= self.degree - 1)
        {
            return Err(Error::invalid(format!("{v} is not a tree vertex")));
        }
        let mut out = Vec::with_capacity(children as usize + 1);
        if let Some((&last, parent)) = word.split_last() {
            out.push(Incidence::inc(
                Vertex::Word(parent.to_vec()),
                v.clone(),
                last as usize,
            ));
        }
        for c in 0..children {
            let mut child = word.clone();
            child.push(c);
            out.push(Incidence::out(v.clone(), Vertex::Word(child), c as usize));
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        format!("regular_tree({})", self.degree)
    }
}

/// The square lattice with edges pointing in the positive coordinate directions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SquareLattice;

impl EdgeRule for SquareLattice {
    fn root(&self) -> Vertex {
        Vertex::Lattice(0, 0)
    }

    fn incident(&self, v: &Vertex) -> Result<Vec<Incidence>> {
        let &Vertex::Lattice(x, y) = v else {
            return Err(Error::invalid(format!("{v} is not a lattice point")));
        };
        Ok(vec![
            Incidence::inc(Vertex::Lattice(x - 1, y), v.clone(), 0),
            Incidence::inc(Vertex::Lattice(x, y - 1), v.clone(), 1),
            Incidence::out(v.clone(), Vertex::Lattice(x + 1, y), 0),
            Incidence::out(v.clone(), Vertex::Lattice(x, y + 1), 1),
        ])
    }

    fn describe(&self) -> String {
        "square_lattice".to_string()
    }
}

type IncidenceFn = dyn Fn(&Vertex) -> Result<Vec<Incidence>> + Send + Sync;

/// Rule backed by a user closure.
#[derive(Clone)]
pub struct FnRule {
    root: Vertex,
    name: String,
    f: Arc<IncidenceFn>,
}

impl FnRule {
    pub fn new(
        name: impl Into<String>,
        root: Vertex,
        f: impl Fn(&Vertex) -> Result<Vec<Incidence>> + Send + Sync + 'static,
    ) -> Self {
        FnRule {
            root,
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl EdgeRule for FnRule {
    fn root(&self) -> Vertex {
        self.root.clone()
    }

    fn incident(&self, v: &Vertex) -> Result<Vec<Incidence>> {
        (self.f)(v)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// Helpers for writing [`FnRule`] closures.
pub fn outgoing(source: Vertex, target: Vertex, slot: usize) -> Incidence {
    Incidence::out(source, target, slot)
}

pub fn incoming(source: Vertex, target: Vertex, slot: usize) -> Incidence {
    Incidence::inc(source, target, slot)
}

#[derive(Clone)]
pub struct GeneratedGraph {
    pub rule: Arc<dyn EdgeRule>,
    pub degree_bound: usize,
}

impl fmt::Debug for GeneratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedGraph")
            .field("rule", &self.rule.describe())
            .field("degree_bound", &self.degree_bound)
            .finish()
    }
}

/// Finite description of a bounded-geometry graph.
#[derive(Clone, Debug)]
pub enum GraphPresentation {
    Finite(FiniteGraph),
    /// ℤ-periodic graph: one copy of the cell per integer.
    LinePeriodic {
        cell_vertices: usize,
        edges: Vec<PeriodicEdge>,
    },
    /// Cells indexed by ℕ₀ plus a finite head. Edge copies whose target cell
    /// would be negative are absent.
    RayPeriodic {
        head: FiniteGraph,
        cell_vertices: usize,
        edges: Vec<PeriodicEdge>,
        links: Vec<HeadLink>,
    },
    WindowGenerated(GeneratedGraph),
}

/// Builds a finite presentation; endpoints must lie in `0..vertex_count`.
pub fn build_finite_graph(
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
) -> Result<GraphPresentation> {
    Ok(GraphPresentation::Finite(FiniteGraph::new(vertex_count, edges)?))
}

fn check_periodic(cell_vertices: usize, edges: &[PeriodicEdge]) -> Result<()> {
    if cell_vertices == 0 {
        return Err(Error::invalid("cell must contain at least one vertex"));
    }
    for (i, e) in edges.iter().enumerate() {
        if e.source >= cell_vertices || e.target >= cell_vertices {
            return Err(Error::invalid(format!(
                "edges[{i}] = ({}, {}, {}) references a vertex outside the cell of size {cell_vertices}",
                e.source, e.target, e.shift
            )));
        }
        // Bounded shifts keep the presentation finitely propagating and
        // cell arithmetic far away from overflow.
        if e.shift.unsigned_abs() > 1 << 20 {
            return Err(Error::invalid(format!("edges[{i}] has shift {} out of range", e.shift)));
        }
    }
    Ok(())
}

impl GraphPresentation {
    pub fn line_periodic(cell_vertices: usize, edges: Vec<PeriodicEdge>) -> Result<Self> {
        check_periodic(cell_vertices, &edges)?;
        Ok(GraphPresentation::LinePeriodic {
            cell_vertices,
            edges,
        })
    }

    pub fn ray_periodic(
        head: FiniteGraph,
        cell_vertices: usize,
        edges: Vec<PeriodicEdge>,
        links: Vec<HeadLink>,
    ) -> Result<Self> {
        check_periodic(cell_vertices, &edges)?;
        for (i, l) in links.iter().enumerate() {
            if l.head >= head.vertex_count() || l.local >= cell_vertices {
                return Err(Error::invalid(format!(
                    "head_links[{i}] = ({}, {}, {}) references a missing vertex",
                    l.head, l.local, l.cell
                )));
            }
            if l.cell > 1 << 20 {
                return Err(Error::invalid(format!("head_links[{i}] cell out of range")));
            }
        }
        Ok(GraphPresentation::RayPeriodic {
            head,
            cell_vertices,
            edges,
            links,
        })
    }

    pub fn generated(rule: impl EdgeRule + 'static, degree_bound: usize) -> Self {
        GraphPresentation::WindowGenerated(GeneratedGraph {
            rule: Arc::new(rule),
            degree_bound,
        })
    }

    /// The integer path ℤ with edges n → n+1.
    pub fn integer_path() -> Self {
        GraphPresentation::LinePeriodic {
            cell_vertices: 1,
            edges: vec![PeriodicEdge {
                source: 0,
                target: 0,
                shift: 1,
            }],
        }
    }

    /// The ray ℕ₀ with edges n → n+1.
    pub fn natural_ray() -> Self {
        GraphPresentation::RayPeriodic {
            head: FiniteGraph::new(0, Vec::new()).expect("empty graph"),
            cell_vertices: 1,
            edges: vec![PeriodicEdge {
                source: 0,
                target: 0,
                shift: 1,
            }],
            links: Vec::new(),
        }
    }

    /// The ladder ℤ × {0, 1}: a rung per cell and two rails.
    pub fn integer_ladder() -> Self {
        GraphPresentation::LinePeriodic {
            cell_vertices: 2,
            edges: vec![
                PeriodicEdge {
                    source: 0,
                    target: 1,
                    shift: 0,
                },
                PeriodicEdge {
                    source: 0,
                    target: 0,
                    shift: 1,
                },
                PeriodicEdge {
                    source: 1,
                    target: 1,
                    shift: 1,
                },
            ],
        }
    }

    pub fn regular_tree(degree: u32) -> Result<Self> {
        if degree < 2 {
            return Err(Error::invalid("regular tree degree must be at least 2"));
        }
        Ok(Self::generated(RegularTree { degree }, degree as usize))
    }

    pub fn square_lattice() -> Self {
        Self::generated(SquareLattice, 4)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GraphPresentation::Finite(_) => "finite",
            GraphPresentation::LinePeriodic { .. } => "line_periodic",
            GraphPresentation::RayPeriodic { .. } => "ray_periodic",
            GraphPresentation::WindowGenerated(_) => "window_generated",
        }
    }

    /// Canonical base vertex used when a caller does not pick one.
    pub fn default_base(&self) -> Result<Vertex> {
        match self {
            GraphPresentation::Finite(g) => {
                if g.vertex_count() == 0 {
                    Err(Error::invalid("graph has no vertices"))
                } else {
                    Ok(Vertex::Index(0))
                }
            }
            GraphPresentation::LinePeriodic { .. } => Ok(Vertex::Cell { cell: 0, local: 0 }),
            GraphPresentation::RayPeriodic { head, .. } => Ok(if head.vertex_count() > 0 {
                Vertex::Head(0)
            } else {
                Vertex::Cell { cell: 0, local: 0 }
            }),
            GraphPresentation::WindowGenerated(g) => Ok(g.rule.root()),
        }
    }

    /// Declared degree bound, when the presentation carries one.
    pub fn degree_bound(&self) -> Option<usize> {
        match self {
            GraphPresentation::WindowGenerated(g) => Some(g.degree_bound),
            _ => None,
        }
    }

    /// All incidences at `v`, in a deterministic order.
    pub fn incident(&self, v: &Vertex) -> Result<Vec<Incidence>> {
        let bad = || Error::invalid(format!("{v} is not a vertex of this {} graph", self.kind_name()));
        match self {
            GraphPresentation::Finite(g) => {
                let &Vertex::Index(i) = v else { return Err(bad()) };
                if i >= g.vertex_count() {
                    return Err(bad());
                }
                let mut out = Vec::new();
                for &e in g.incident_edges(i) {
                    let (s, t) = g.edge(e);
                    if s == i {
                        out.push(Incidence::out(Vertex::Index(s), Vertex::Index(t), e));
                    }
                    if t == i {
                        out.push(Incidence::inc(Vertex::Index(s), Vertex::Index(t), e));
                    }
                }
                Ok(out)
            }
            GraphPresentation::LinePeriodic {
                cell_vertices,
                edges,
            } => {
                let &Vertex::Cell { cell, local } = v else { return Err(bad()) };
                if local >= *cell_vertices {
                    return Err(bad());
                }
                Ok(periodic_incidences(cell, local, edges, |_, _| true))
            }
            GraphPresentation::RayPeriodic {
                head,
                cell_vertices,
                edges,
                links,
            } => match *v {
                Vertex::Head(h) => {
                    if h >= head.vertex_count() {
                        return Err(bad());
                    }
                    let mut out = Vec::new();
                    for &e in head.incident_edges(h) {
                        let (s, t) = head.edge(e);
                        if s == h {
                            out.push(Incidence::out(Vertex::Head(s), Vertex::Head(t), e));
                        }
                        if t == h {
                            out.push(Incidence::inc(Vertex::Head(s), Vertex::Head(t), e));
                        }
                    }
                    for (j, l) in links.iter().enumerate() {
                        if l.head == h {
                            out.push(Incidence::out(
                                Vertex::Head(h),
                                Vertex::Cell {
                                    cell: l.cell as i64,
                                    local: l.local,
                                },
                                head.edge_count() + j,
                            ));
                        }
                    }
                    Ok(out)
                }
                Vertex::Cell { cell, local } => {
                    if cell < 0 || local >= *cell_vertices {
                        return Err(bad());
                    }
                    let mut out = Vec::new();
                    for (j, l) in links.iter().enumerate() {
                        if l.local == local && l.cell as i64 == cell {
                            out.push(Incidence::inc(
                                Vertex::Head(l.head),
                                v.clone(),
                                head.edge_count() + j,
                            ));
                        }
                    }
                    out.extend(periodic_incidences(cell, local, edges, |a, b| {
                        a >= 0 && b >= 0
                    }));
                    Ok(out)
                }
                _ => Err(bad()),
            },
            GraphPresentation::WindowGenerated(g) => g.rule.incident(v),
        }
    }
}

/// Incidences of `(cell, local)` in a periodic cover. `exists(a, b)` filters
/// edge copies by their source and target cells.
fn periodic_incidences(
    cell: i64,
    local: usize,
    edges: &[PeriodicEdge],
    exists: impl Fn(i64, i64) -> bool,
) -> Vec<Incidence> {
    let mut out = Vec::new();
    for (slot, e) in edges.iter().enumerate() {
        if e.source == local && exists(cell, cell + e.shift) {
            out.push(Incidence::out(
                Vertex::Cell { cell, local },
                Vertex::Cell {
                    cell: cell + e.shift,
                    local: e.target,
                },
                slot,
            ));
        }
        if e.target == local && exists(cell - e.shift, cell) {
            out.push(Incidence::inc(
                Vertex::Cell {
                    cell: cell - e.shift,
                    local: e.source,
                },
                Vertex::Cell { cell, local },
                slot,
            ));
        }
    }
    out
}
