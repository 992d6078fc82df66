use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::presentation::{EdgeKey, FiniteGraph, GraphPresentation, HeadLink, PeriodicEdge, Vertex};
use super::window::{window, Subgraph};
use crate::error::{Error, Result};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub count: usize,
    /// Component label per vertex, numbered by first appearance.
    pub labels: Vec<usize>,
}

pub fn components(g: &FiniteGraph) -> Components {
    let mut uf = UnionFind::new(g.vertex_count());
    for &(s, t) in g.edges() {
        uf.union(s, t);
    }
    let mut relabel = HashMap::new();
    let labels = (0..g.vertex_count())
        .map(|v| {
            let r = uf.find(v);
            let next = relabel.len();
            *relabel.entry(r).or_insert(next)
        })
        .collect();
    Components {
        count: relabel.len(),
        labels,
    }
}

/// Closed walk without repeated vertices. `edges[i]` joins `vertices[i]`
/// to `vertices[(i + 1) % len]`, in either orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeKey>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestDecision {
    pub is_forest: bool,
    pub cycle: Option<Cycle>,
}

/// First cycle met by union-find, as (vertex, edge) steps. Parallel edges
/// give 2-cycles and self-loops 1-cycles.
pub(crate) fn find_cycle(g: &FiniteGraph) -> Option<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut tree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        if s == t {
            return Some(vec![(s, e)]);
        }
        if uf.union(s, t) {
            tree[s].push((t, e));
            tree[t].push((s, e));
            continue;
        }
        // Tree path t -> s closes the cycle s -e-> t -> ... -> s.
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            if x == s {
                break;
            }
            for &(y, f) in &tree[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, f));
                    queue.push_back(y);
                }
            }
        }
        let mut back = Vec::new();
        let mut x = s;
        while x != t {
            let (p, f) = prev[x].expect("tree path exists");
            back.push((p, f));
            x = p;
        }
        back.reverse();
        let mut steps = vec![(s, e)];
        steps.extend(back);
        return Some(steps);
    }
    None
}

fn cycle_from_steps(sub: &Subgraph, steps: &[(usize, usize)]) -> Cycle {
    Cycle {
        vertices: steps.iter().map(|&(v, _)| sub.vertices[v].clone()).collect(),
        edges: steps.iter().map(|&(_, e)| sub.edge_keys[e].clone()).collect(),
    }
}

/// Signed traversal of an edge orbit in the quotient.
type Walk = Vec<(usize, bool)>;

fn inverse(w: &[(usize, bool)]) -> Walk {
    w.iter().rev().map(|&(e, f)| (e, !f)).collect()
}

/// Spanning forest of the quotient graph with cell-shift potentials.
/// Lifting a quotient walk changes the cell by the sum of signed shifts;
/// a closed walk lifts to a closed walk exactly when that sum vanishes.
struct Quotient<'a> {
    edges: &'a [PeriodicEdge],
    comp: Vec<usize>,
    comp_count: usize,
    roots: Vec<usize>,
    potential: Vec<i64>,
    parent: Vec<Option<(usize, usize, bool)>>,
    /// Non-tree edge orbits with the net shift of their fundamental cycle.
    non_tree: Vec<(usize, i64)>,
}

impl<'a> Quotient<'a> {
    fn new(cell_vertices: usize, edges: &'a [PeriodicEdge]) -> Self {
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); cell_vertices];
        for (i, e) in edges.iter().enumerate() {
            adj[e.source].push((e.target, i, true));
            if e.source != e.target {
                adj[e.target].push((e.source, i, false));
            }
        }
        let mut comp = vec![usize::MAX; cell_vertices];
        let mut potential = vec![0i64; cell_vertices];
        let mut parent = vec![None; cell_vertices];
        let mut tree_edge = vec![false; edges.len()];
        let mut roots = Vec::new();
        for r in 0..cell_vertices {
            if comp[r] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(r);
            comp[r] = c;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for &(v, e, fwd) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        let s = edges[e].shift;
                        potential[v] = potential[u] + if fwd { s } else { -s };
                        parent[v] = Some((u, e, fwd));
                        tree_edge[e] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        let non_tree = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| !tree_edge[i])
            .map(|(i, e)| (i, e.shift + potential[e.source] - potential[e.target]))
            .collect();
        Quotient {
            edges,
            comp_count: roots.len(),
            comp,
            roots,
            potential,
            parent,
            non_tree,
        }
    }

    fn path_from_root(&self, mut v: usize) -> Walk {
        let mut w = Vec::new();
        while let Some((u, e, fwd)) = self.parent[v] {
            w.push((e, fwd));
            v = u;
        }
        w.reverse();
        w
    }

    /// Fundamental cycle of a non-tree edge, based at its component root.
    fn fundamental(&self, e: usize) -> Walk {
        let PeriodicEdge { source, target, .. } = self.edges[e];
        let mut w = self.path_from_root(source);
        w.push((e, true));
        w.extend(inverse(&self.path_from_root(target)));
        w
    }

    fn component_cycles(&self, c: usize) -> Vec<(usize, i64)> {
        self.non_tree
            .iter()
            .copied()
            .filter(|&(e, _)| self.comp[self.edges[e].source] == c)
            .collect()
    }

    /// gcd of cycle shifts in component `c`; the cover of that component
    /// has this many components (infinitely many when it is 0).
    fn shift_gcd(&self, c: usize) -> u64 {
        self.component_cycles(c)
            .iter()
            .fold(0u64, |g, &(_, s)| g.gcd(&s.unsigned_abs()))
    }

    /// A closed quotient walk with zero net shift whose lift is not
    /// backtracking-trivial, when one exists.
    fn null_walk(&self) -> Option<(usize, Walk)> {
        for c in 0..self.comp_count {
            let cycles = self.component_cycles(c);
            if let Some(&(e, _)) = cycles.iter().find(|&&(_, s)| s == 0) {
                return Some((c, self.fundamental(e)));
            }
            if cycles.len() >= 2 {
                let (e1, s1) = cycles[0];
                let (e2, s2) = cycles[1];
                let g = s1.unsigned_abs().gcd(&s2.unsigned_abs()) as i64;
                let mut w = power(&self.fundamental(e1), s2 / g);
                w.extend(power(&self.fundamental(e2), -(s1 / g)));
                return Some((c, w));
            }
        }
        None
    }

    fn lift(&self, c: usize, walk: &[(usize, bool)]) -> Vec<Step> {
        let root = self.roots[c];
        let mut cell = -self.potential[root];
        let mut out = Vec::with_capacity(walk.len());
        for &(e, fwd) in walk {
            let PeriodicEdge {
                source,
                target,
                shift,
            } = self.edges[e];
            let (src_cell, from, to) = if fwd {
                (
                    cell,
                    Vertex::Cell { cell, local: source },
                    Vertex::Cell {
                        cell: cell + shift,
                        local: target,
                    },
                )
            } else {
                (
                    cell - shift,
                    Vertex::Cell { cell, local: target },
                    Vertex::Cell {
                        cell: cell - shift,
                        local: source,
                    },
                )
            };
            let key = EdgeKey {
                source: Vertex::Cell {
                    cell: src_cell,
                    local: source,
                },
                target: Vertex::Cell {
                    cell: src_cell + shift,
                    local: target,
                },
                slot: e,
            };
            cell = if fwd { cell + shift } else { cell - shift };
            out.push(Step {
                from,
                to,
                key,
                forward: fwd,
            });
        }
        out
    }
}

/// Quotient walk of a fundamental cycle with nonzero shift, with that
/// shift. Its lift is a bi-infinite path repeating every |shift| cells.
pub(crate) fn drifting_cycle(cell_vertices: usize, edges: &[PeriodicEdge]) -> Option<(Walk, i64)> {
    let q = Quotient::new(cell_vertices, edges);
    let &(e, s) = q.non_tree.iter().find(|&&(_, s)| s != 0)?;
    Some((q.fundamental(e), s))
}

fn power(w: &[(usize, bool)], k: i64) -> Walk {
    let base = if k < 0 { inverse(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

#[derive(Clone, Debug)]
struct Step {
    from: Vertex,
    to: Vertex,
    key: EdgeKey,
    forward: bool,
}

/// Cancels backtracking and returns the first simple closed sub-walk.
fn simple_cycle(steps: Vec<Step>) -> Option<Cycle> {
    let mut reduced: Vec<Step> = Vec::new();
    for s in steps {
        if let Some(top) = reduced.last() {
            if top.key == s.key && top.forward != s.forward {
                reduced.pop();
                continue;
            }
        }
        reduced.push(s);
    }
    let mut seen: HashMap<&Vertex, usize> = HashMap::new();
    for (j, s) in reduced.iter().enumerate() {
        if let Some(&i) = seen.get(&s.from) {
            let seg = &reduced[i..j];
            return Some(Cycle {
                vertices: seg.iter().map(|s| s.from.clone()).collect(),
                edges: seg.iter().map(|s| s.key.clone()).collect(),
            });
        }
        seen.insert(&s.from, j);
    }
    let last = reduced.last()?;
    let i = seen[&last.to];
    let seg = &reduced[i..];
    Some(Cycle {
        vertices: seg.iter().map(|s| s.from.clone()).collect(),
        edges: seg.iter().map(|s| s.key.clone()).collect(),
    })
}

fn shift_cycle(c: Cycle, by: i64) -> Cycle {
    let mv = |v: &Vertex| match *v {
        Vertex::Cell { cell, local } => Vertex::Cell {
            cell: cell + by,
            local,
        },
        ref other => other.clone(),
    };
    Cycle {
        vertices: c.vertices.iter().map(mv).collect(),
        edges: c
            .edges
            .iter()
            .map(|k| EdgeKey {
                source: mv(&k.source),
                target: mv(&k.target),
                slot: k.slot,
            })
            .collect(),
    }
}

fn line_cycle(cell_vertices: usize, edges: &[PeriodicEdge]) -> Option<Cycle> {
    let q = Quotient::new(cell_vertices, edges);
    let (c, walk) = q.null_walk()?;
    simple_cycle(q.lift(c, &walk))
}

/// Cells `0..=last` of a ray plus its head.
fn ray_truncation(pres: &GraphPresentation, last: i64) -> Result<Subgraph> {
    let GraphPresentation::RayPeriodic {
        head,
        cell_vertices,
        ..
    } = pres
    else {
        unreachable!("ray_truncation on a non-ray presentation");
    };
    let mut vs: Vec<Vertex> = (0..head.vertex_count()).map(Vertex::Head).collect();
    for cell in 0..=last {
        for local in 0..*cell_vertices {
            vs.push(Vertex::Cell { cell, local });
        }
    }
    Subgraph::induced(pres, vs)
}

/// Number of cells beyond which ray structure repeats: covers the span of
/// any simple path in a periodic forest component.
fn ray_margin(cell_vertices: usize, edges: &[PeriodicEdge], links: &[HeadLink]) -> i64 {
    let max_shift = edges.iter().map(|e| e.shift.abs()).max().unwrap_or(0);
    let max_link = links.iter().map(|l| l.cell as i64).max().unwrap_or(0);
    max_link + 2 * (cell_vertices as i64 + 1) * (max_shift + 1)
}

pub fn is_forest(pres: &GraphPresentation) -> Result<ForestDecision> {
    let cycle = match pres {
        GraphPresentation::Finite(g) => find_cycle(g).map(|steps| {
            let sub = Subgraph {
                graph: g.clone(),
                vertices: (0..g.vertex_count()).map(Vertex::Index).collect(),
                edge_keys: g
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(i, &(s, t))| EdgeKey {
                        source: Vertex::Index(s),
                        target: Vertex::Index(t),
                        slot: i,
                    })
                    .collect(),
            };
            cycle_from_steps(&sub, &steps)
        }),
        GraphPresentation::LinePeriodic {
            cell_vertices,
            edges,
        } => line_cycle(*cell_vertices, edges),
        GraphPresentation::RayPeriodic {
            cell_vertices,
            edges,
            links,
            ..
        } => match line_cycle(*cell_vertices, edges) {
            Some(c) => {
                let low = c
                    .vertices
                    .iter()
                    .filter_map(|v| match v {
                        Vertex::Cell { cell, .. } => Some(*cell),
                        _ => None,
                    })
                    .min()
                    .unwrap_or(0);
                Some(shift_cycle(c, -low))
            }
            None => {
                let sub = ray_truncation(pres, ray_margin(*cell_vertices, edges, links))?;
                find_cycle(&sub.graph).map(|steps| cycle_from_steps(&sub, &steps))
            }
        },
        GraphPresentation::WindowGenerated(_) => {
            return Err(Error::unsupported(
                "acyclicity of a window-generated graph is not decidable from finitely many windows",
            ))
        }
    };
    Ok(ForestDecision {
        is_forest: cycle.is_none(),
        cycle,
    })
}

/// Connectivity of the whole presentation. Window-generated rules are
/// connected by construction (every vertex is reached from the root).
pub fn is_connected(pres: &GraphPresentation) -> Result<bool> {
    Ok(match pres {
        GraphPresentation::Finite(g) => g.vertex_count() > 0 && components(g).count == 1,
        GraphPresentation::LinePeriodic {
            cell_vertices,
            edges,
        } => {
            let q = Quotient::new(*cell_vertices, edges);
            q.comp_count == 1 && q.shift_gcd(0) == 1
        }
        GraphPresentation::RayPeriodic {
            cell_vertices,
            edges,
            links,
            ..
        } => {
            let m = ray_margin(*cell_vertices, edges, links);
            let sub = ray_truncation(pres, 2 * m)?;
            let comps = components(&sub.graph);
            let near: Vec<usize> = sub
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| !matches!(v, Vertex::Cell { cell, .. } if *cell > m))
                .map(|(i, _)| comps.labels[i])
                .collect();
            near.windows(2).all(|w| w[0] == w[1])
        }
        GraphPresentation::WindowGenerated(_) => true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ends {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "many")]
    Many,
}

impl Ends {
    pub fn from_count(n: usize) -> Self {
        match n {
            0 => Ends::Zero,
            1 => Ends::One,
            2 => Ends::Two,
            _ => Ends::Many,
        }
    }

    pub fn at_most_one(self) -> bool {
        matches!(self, Ends::Zero | Ends::One)
    }
}

impl fmt::Display for Ends {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ends::Zero => "0",
            Ends::One => "1",
            Ends::Two => "2",
            Ends::Many => "many",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsReport {
    pub ends: Ends,
    /// False for window-generated graphs, where the value is a lower bound.
    pub exact: bool,
    /// (inner radius r, components of B(R) \ B(r) reaching distance R).
    pub profile: Vec<(usize, usize)>,
}

pub const DEFAULT_ENDS_RADIUS: usize = 6;

pub fn count_ends(pres: &GraphPresentation) -> Result<EndsReport> {
    count_ends_with(pres, DEFAULT_ENDS_RADIUS)
}

/// Ends of a connected presentation. `probe_radius` is the outer radius R
/// used for window-generated graphs.
pub fn count_ends_with(pres: &GraphPresentation, probe_radius: usize) -> Result<EndsReport> {
    if !is_connected(pres)? {
        return Err(Error::invalid("ends are counted per component; the graph is disconnected"));
    }
    let exact = |ends| EndsReport {
        ends,
        exact: true,
        profile: Vec::new(),
    };
    match pres {
        GraphPresentation::Finite(_) => Ok(exact(Ends::Zero)),
        GraphPresentation::LinePeriodic { .. } => Ok(exact(Ends::Two)),
        GraphPresentation::RayPeriodic {
            cell_vertices,
            edges,
            ..
        } => {
            // Each component of the line cover keeps exactly one end on the ray.
            let q = Quotient::new(*cell_vertices, edges);
            let n: u64 = (0..q.comp_count).map(|c| q.shift_gcd(c)).sum();
            Ok(exact(Ends::from_count(n as usize)))
        }
        GraphPresentation::WindowGenerated(_) => {
            if probe_radius < 2 {
                return Err(Error::invalid("probe radius must be at least 2"));
            }
            let w = window(pres, &pres.default_base()?, probe_radius)?;
            let profile: Vec<(usize, usize)> = (1..=probe_radius / 2)
                .map(|r| (r, outer_components(&w.sub.graph, &w.distance, r, probe_radius)))
                .collect();
            let tail = &profile[profile.len().saturating_sub(3)..];
            let low = tail.iter().map(|&(_, n)| n).min().unwrap_or(0);
            Ok(EndsReport {
                ends: Ends::from_count(low),
                exact: false,
                profile,
            })
        }
    }
}

fn outer_components(g: &FiniteGraph, dist: &[usize], r: usize, big: usize) -> usize {
    let mut uf = UnionFind::new(g.vertex_count());
    for &(s, t) in g.edges() {
        if dist[s] > r && dist[t] > r {
            uf.union(s, t);
        }
    }
    let mut roots: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| dist[v] == big)
        .map(|v| uf.find(v))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presentation::build_finite_graph;

    fn finite(n: usize, e: &[(usize, usize)]) -> FiniteGraph {
        FiniteGraph::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(&finite(3, &[(0, 1), (1, 2), (2, 0)])).count, 1);
        let two = finite(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(components(&two).count, 2);
        assert_eq!(components(&finite(3, &[])).count, 3);
    }

    fn check_cycle(pres: &GraphPresentation, c: &Cycle) {
        let k = c.len();
        assert!(k >= 1);
        let mut vs = c.vertices.clone();
        vs.sort();
        vs.dedup();
        assert_eq!(vs.len(), k, "vertices repeat in {c:?}");
        for i in 0..k {
            let (a, b) = (&c.vertices[i], &c.vertices[(i + 1) % k]);
            let key = &c.edges[i];
            assert!(
                (&key.source, &key.target) == (a, b) || (&key.source, &key.target) == (b, a),
                "edge {i} does not join consecutive vertices"
            );
            let inc = pres.incident(a).unwrap();
            assert!(inc.iter().any(|x| &x.key == key), "edge {key:?} missing from graph");
        }
        let mut es = c.edges.clone();
        es.sort();
        es.dedup();
        assert_eq!(es.len(), k);
    }

    #[test]
    fn line_forest_decisions() {
        let z = GraphPresentation::integer_path();
        assert!(is_forest(&z).unwrap().is_forest);
        let lad = GraphPresentation::integer_ladder();
        let d = is_forest(&lad).unwrap();
        assert!(!d.is_forest);
        let c = d.cycle.unwrap();
        assert_eq!(c.len(), 4);
        check_cycle(&lad, &c);
        let loops = GraphPresentation::line_periodic(
            2,
            vec![
                PeriodicEdge { source: 0, target: 1, shift: 0 },
                PeriodicEdge { source: 0, target: 1, shift: 0 },
                PeriodicEdge { source: 1, target: 0, shift: 0 },
            ],
        )
        .unwrap();
        let d = is_forest(&loops).unwrap();
        assert!(!d.is_forest);
        check_cycle(&loops, &d.cycle.unwrap());
    }

    #[test]
    fn coprime_shift_cycles_close_up() {
        // Quotient: one vertex, loops of shift 2 and 3. The cover is
        // connected and has cycles of length 5.
        let g = GraphPresentation::line_periodic(
            1,
            vec![
                PeriodicEdge { source: 0, target: 0, shift: 2 },
                PeriodicEdge { source: 0, target: 0, shift: 3 },
            ],
        )
        .unwrap();
        let d = is_forest(&g).unwrap();
        let c = d.cycle.unwrap();
        check_cycle(&g, &c);
        assert_eq!(c.len(), 5);
        assert!(is_connected(&g).unwrap());
    }

    #[test]
    fn finite_forest_matches_rank() {
        let tri = build_finite_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let d = is_forest(&tri).unwrap();
        check_cycle(&tri, d.cycle.as_ref().unwrap());
        assert_eq!(d.cycle.unwrap().len(), 3);
        let path = build_finite_graph(3, vec![(0, 1), (2, 1)]).unwrap();
        assert!(is_forest(&path).unwrap().is_forest);
    }

    #[test]
    fn ray_head_cycle_found() {
        // Head vertex linked twice to the ray: closes a triangle with cell 0..1.
        let head = FiniteGraph::new(1, vec![]).unwrap();
        let g = GraphPresentation::ray_periodic(
            head,
            1,
            vec![PeriodicEdge { source: 0, target: 0, shift: 1 }],
            vec![
                HeadLink { head: 0, local: 0, cell: 0 },
                HeadLink { head: 0, local: 0, cell: 1 },
            ],
        )
        .unwrap();
        let d = is_forest(&g).unwrap();
        check_cycle(&g, d.cycle.as_ref().unwrap());
        assert_eq!(d.cycle.unwrap().len(), 3);
        assert!(is_forest(&GraphPresentation::natural_ray()).unwrap().is_forest);
    }

    #[test]
    fn ends_of_standard_graphs() {
        assert_eq!(count_ends(&GraphPresentation::natural_ray()).unwrap().ends, Ends::One);
        assert_eq!(count_ends(&GraphPresentation::integer_path()).unwrap().ends, Ends::Two);
        let tri = build_finite_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_ends(&tri).unwrap().ends, Ends::Zero);
        let t = count_ends(&GraphPresentation::regular_tree(3).unwrap()).unwrap();
        assert_eq!(t.ends, Ends::Many);
        assert!(!t.exact);
        assert_eq!(t.profile, vec![(1, 6), (2, 12), (3, 24)]);
        let lat = count_ends_with(&GraphPresentation::square_lattice(), 8).unwrap();
        assert_eq!(lat.ends, Ends::One);
    }

    #[test]
    fn disconnected_inputs_rejected() {
        let two = build_finite_graph(2, vec![]).unwrap();
        assert!(matches!(count_ends(&two), Err(Error::InvalidInput(_))));
        // Two rails without rungs: two copies of the line.
        let rails = GraphPresentation::line_periodic(
            2,
            vec![
                PeriodicEdge { source: 0, target: 0, shift: 1 },
                PeriodicEdge { source: 1, target: 1, shift: 1 },
            ],
        )
        .unwrap();
        assert!(!is_connected(&rails).unwrap());
        // Shift-2 line: even and odd cells never meet.
        let even = GraphPresentation::line_periodic(
            1,
            vec![PeriodicEdge { source: 0, target: 0, shift: 2 }],
        )
        .unwrap();
        assert!(!is_connected(&even).unwrap());
    }

    #[test]
    fn rails_joined_by_head_have_two_ends() {
        let head = FiniteGraph::new(1, vec![]).unwrap();
        let g = GraphPresentation::ray_periodic(
            head,
            2,
            vec![
                PeriodicEdge { source: 0, target: 0, shift: 1 },
                PeriodicEdge { source: 1, target: 1, shift: 1 },
            ],
            vec![
                HeadLink { head: 0, local: 0, cell: 0 },
                HeadLink { head: 0, local: 1, cell: 0 },
            ],
        )
        .unwrap();
        assert!(is_connected(&g).unwrap());
        assert_eq!(count_ends(&g).unwrap().ends, Ends::Two);
        // A ray whose first-cell vertex only points backwards is cut off.
        let cut = GraphPresentation::ray_periodic(
            FiniteGraph::new(0, vec![]).unwrap(),
            2,
            vec![
                PeriodicEdge { source: 0, target: 0, shift: 1 },
                PeriodicEdge { source: 1, target: 0, shift: -1 },
            ],
            vec![],
        )
        .unwrap();
        assert!(!is_connected(&cut).unwrap());
    }
}
