use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::chain::boundary_dense;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Window};

/// Dinic max-flow on an explicit arc list.
struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    /// Adds u -> v with capacity `c`; returns the arc id (its reverse is id ^ 1).
    fn arc(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.next[u] < self.head[u].len() {
            let a = self.head[u][self.next[u]];
            let v = self.to[a];
            if self.cap[a] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[a]));
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    pub feasible: bool,
    pub capacity: i64,
    pub max_flow: i64,
    /// Number of interior vertices, each of which must emit one unit.
    pub demand: i64,
    /// Edge coefficients c with |c_e| <= capacity and ∂c = 1 on every
    /// interior vertex that the flow serves. Complete when feasible.
    pub chain: Vec<i64>,
    /// Window vertices on the source side of a minimum cut. When infeasible
    /// this set has more interior vertices than capacity leaving it.
    pub cut: Vec<usize>,
}

/// Searches for an integer 1-chain with |c_e| <= `capacity` whose boundary
/// is 1 on every interior vertex of the window; boundary vertices absorb
/// arbitrary excess.
pub fn divergence_one_flow(w: &Window, capacity: i64) -> Result<FlowCertificate> {
    if capacity < 1 {
        return Err(Error::invalid("capacity must be at least 1"));
    }
    let interior = w.interior_vertices();
    if interior.is_empty() {
        return Err(Error::invalid("window has no interior vertices"));
    }
    let g = w.graph();
    let n = g.vertex_count();
    let (src, sink) = (n, n + 1);
    let mut net = Dinic::new(n + 2);
    let demand = interior.len() as i64;
    for &v in &interior {
        net.arc(src, v, 1);
    }
    let mut arcs = Vec::with_capacity(g.edge_count());
    for &(s, t) in g.edges() {
        if s == t {
            arcs.push(None);
            continue;
        }
        let fwd = net.arc(s, t, capacity);
        let back = net.arc(t, s, capacity);
        arcs.push(Some((fwd, back)));
    }
    for v in w.boundary_vertices() {
        net.arc(v, sink, demand);
    }
    let max_flow = net.run(src, sink);
    // Net flow along s -> t is φ_e; conservation gives ∂φ = −1 inside.
    let chain = arcs
        .iter()
        .map(|a| match a {
            Some((fwd, back)) => -((capacity - net.cap[*fwd]) - (capacity - net.cap[*back])),
            None => 0,
        })
        .collect();
    let side = net.source_side(src);
    Ok(FlowCertificate {
        feasible: max_flow == demand,
        capacity,
        max_flow,
        demand,
        chain,
        cut: (0..n).filter(|&v| side[v]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailChain {
    /// Edge ids in the order they were followed.
    pub path: Vec<usize>,
    /// ±1 per traversal accumulated per edge: ∂(chain) = v − terminal.
    pub chain: Vec<i64>,
    pub terminal: usize,
}

/// Follows incoming budget backwards from `v` until a boundary vertex is
/// reached. `c` must satisfy ∂c = 1 on every interior vertex; orientation
/// flips for negative coefficients are done here. Ties go to the lowest
/// edge id.
pub fn tail_chain(w: &Window, c: &[i64], v: usize) -> Result<TailChain> {
    let g = w.graph();
    if c.len() != g.edge_count() {
        return Err(Error::invalid("chain length differs from the window edge count"));
    }
    if v >= g.vertex_count() {
        return Err(Error::invalid(format!("vertex {v} outside the window")));
    }
    let mut budget: Vec<i64> = c.iter().map(|x| x.abs()).collect();
    // Flipped orientation: each edge points along positive coefficient.
    let oriented: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .zip(c)
        .map(|(&(s, t), &x)| if x < 0 { (t, s) } else { (s, t) })
        .collect();
    let mut path = Vec::new();
    let mut chain = vec![0i64; g.edge_count()];
    let mut x = v;
    while !w.is_boundary(x) {
        let next = g
            .incident_edges(x)
            .iter()
            .copied()
            .filter(|&e| oriented[e].1 == x && oriented[e].0 != x && budget[e] > 0)
            .min();
        let Some(e) = next else {
            return Err(Error::Contradiction(format!(
                "no incoming budget at interior vertex {}: the input chain does not have boundary 1 there",
                w.vertices()[x]
            )));
        };
        budget[e] -= 1;
        chain[e] += c[e].signum();
        path.push(e);
        x = oriented[e].0;
    }
    Ok(TailChain {
        path,
        chain,
        terminal: x,
    })
}

/// ±1 chain around a circuit given by its vertex sequence. The edge between
/// consecutive vertices is the lowest unused edge id joining them; the
/// first edge gets +1 and each further edge keeps the sign when its
/// orientation agrees with the first one relative to the traversal.
pub fn circuit_cycle(g: &FiniteGraph, circuit: &[usize]) -> Result<Vec<i64>> {
    let mut vs = circuit.to_vec();
    if vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    if vs.is_empty() {
        return Err(Error::invalid("empty circuit"));
    }
    if let Some(&bad) = vs.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::invalid(format!("circuit vertex {bad} is not in the graph")));
    }
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vs.len() {
        return Err(Error::invalid("circuit repeats a vertex"));
    }
    let k = vs.len();
    let mut used = vec![false; g.edge_count()];
    let mut chain = vec![0i64; g.edge_count()];
    let mut first_dir = 0i64;
    for i in 0..k {
        let (a, b) = (vs[i], vs[(i + 1) % k]);
        let e = g
            .incident_edges(a)
            .iter()
            .copied()
            .filter(|&e| !used[e])
            .filter(|&e| {
                let (s, t) = g.edge(e);
                (s, t) == (a, b) || (s, t) == (b, a)
            })
            .min()
            .ok_or_else(|| Error::invalid(format!("no unused edge joins {a} and {b}")))?;
        used[e] = true;
        let dir = if g.edge(e).0 == a { 1 } else { -1 };
        if i == 0 {
            first_dir = dir;
        }
        chain[e] = dir * first_dir;
    }
    debug_assert!(boundary_dense(g.vertex_count(), g.edges(), &chain)
        .iter()
        .all(|&x| x == 0));
    Ok(chain)
}
