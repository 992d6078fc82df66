use std::collections::{HashMap, VecDeque};

use super::presentation::{EdgeKey, FiniteGraph, GraphPresentation, Vertex};
use crate::error::{Error, Result};

/// Finite subgraph of a presentation together with the names of its
/// vertices and edges in the parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: FiniteGraph,
    pub vertices: Vec<Vertex>,
    pub edge_keys: Vec<EdgeKey>,
}

impl Subgraph {
    /// Induced subgraph on `vertices` (order preserved, duplicates rejected).
    pub fn induced(pres: &GraphPresentation, vertices: Vec<Vertex>) -> Result<Self> {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if local.insert(v.clone(), i).is_some() {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
        }
        let bound = pres.degree_bound();
        let mut edges = Vec::new();
        let mut keys = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            let inc = pres.incident(v)?;
            if let Some(bound) = bound {
                if inc.len() > bound {
                    return Err(Error::DegreeViolation {
                        vertex: v.to_string(),
                        degree: inc.len(),
                        bound,
                    });
                }
            }
            for x in inc {
                if !x.outgoing {
                    continue;
                }
                if let Some(&j) = local.get(&x.other) {
                    edges.push((i, j));
                    keys.push(x.key);
                }
            }
        }
        Ok(Subgraph {
            graph: FiniteGraph::new(vertices.len(), edges)?,
            vertices,
            edge_keys: keys,
        })
    }

    pub fn local_index(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }
}

/// Ball of a given radius around a base vertex. Local vertex 0 is the base;
/// vertices are listed in breadth-first order.
#[derive(Clone, Debug)]
pub struct Window {
    pub sub: Subgraph,
    pub distance: Vec<usize>,
    pub radius: usize,
    pub base: Vertex,
}

impl Window {
    pub fn graph(&self) -> &FiniteGraph {
        &self.sub.graph
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.sub.vertices
    }

    pub fn edge_keys(&self) -> &[EdgeKey] {
        &self.sub.edge_keys
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.distance[v] == self.radius
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.distance.len()).filter(|&v| self.is_boundary(v)).collect()
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.distance.len()).filter(|&v| !self.is_boundary(v)).collect()
    }

    /// Boundary-to-volume ratio, the Følner quantity of the ball.
    pub fn boundary_ratio(&self) -> f64 {
        self.boundary_vertices().len() as f64 / self.distance.len() as f64
    }
}

/// Breadth-first ball of `radius` around `base`.
pub fn window(pres: &GraphPresentation, base: &Vertex, radius: usize) -> Result<Window> {
    let bound = pres.degree_bound();
    let mut dist: HashMap<Vertex, usize> = HashMap::new();
    let mut order = vec![base.clone()];
    let mut distance = vec![0];
    dist.insert(base.clone(), 0);
    let mut queue = VecDeque::from([base.clone()]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        let inc = pres.incident(&v)?;
        if let Some(bound) = bound {
            if inc.len() > bound {
                return Err(Error::DegreeViolation {
                    vertex: v.to_string(),
                    degree: inc.len(),
                    bound,
                });
            }
        }
        if d == radius {
            continue;
        }
        for x in inc {
            if !dist.contains_key(&x.other) {
                dist.insert(x.other.clone(), d + 1);
                order.push(x.other.clone());
                distance.push(d + 1);
                queue.push_back(x.other);
            }
        }
    }
    // A finite graph can be exhausted before the radius is reached; then
    // nothing sits at distance `radius` and the boundary is empty.
    let sub = Subgraph::induced(pres, order)?;
    Ok(Window {
        sub,
        distance,
        radius,
        base: base.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presentation::{build_finite_graph, incoming, outgoing, FnRule};

    #[test]
    fn integer_path_ball() {
        let w = window(
            &GraphPresentation::integer_path(),
            &Vertex::Cell { cell: 0, local: 0 },
            2,
        )
        .unwrap();
        let mut cells: Vec<i64> = w
            .vertices()
            .iter()
            .map(|v| match v {
                Vertex::Cell { cell, .. } => *cell,
                _ => unreachable!(),
            })
            .collect();
        cells.sort();
        assert_eq!(cells, vec![-2, -1, 0, 1, 2]);
        assert_eq!(w.graph().edge_count(), 4);
        let mut bnd: Vec<&Vertex> = w.boundary_vertices().iter().map(|&i| &w.vertices()[i]).collect();
        bnd.sort();
        assert_eq!(
            bnd,
            vec![
                &Vertex::Cell { cell: -2, local: 0 },
                &Vertex::Cell { cell: 2, local: 0 }
            ]
        );
    }

    #[test]
    fn tree_star() {
        let t = GraphPresentation::regular_tree(3).unwrap();
        let w = window(&t, &Vertex::Word(vec![]), 1).unwrap();
        assert_eq!(w.vertices().len(), 4);
        assert_eq!(w.graph().edge_count(), 3);
        assert_eq!(w.boundary_vertices(), vec![1, 2, 3]);
    }

    #[test]
    fn finite_graph_exhausted() {
        let g = build_finite_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = window(&g, &Vertex::Index(1), 5).unwrap();
        assert_eq!(w.vertices().len(), 3);
        assert_eq!(w.graph().edge_count(), 3);
        assert!(w.boundary_vertices().is_empty());
    }

    #[test]
    fn interior_degree_matches_parent() {
        let lad = GraphPresentation::integer_ladder();
        let w = window(&lad, &Vertex::Cell { cell: 0, local: 1 }, 3).unwrap();
        for v in w.interior_vertices() {
            assert_eq!(
                w.graph().degree(v),
                lad.incident(&w.vertices()[v]).unwrap().len()
            );
        }
    }

    #[test]
    fn degree_violation_reported() {
        // Root of a "tree" that claims degree 2 but has three children.
        let rule = FnRule::new("bad", Vertex::Word(vec![]), |v| {
            let Vertex::Word(w) = v else { unreachable!() };
            let mut out = Vec::new();
            if let Some((&last, parent)) = w.split_last() {
                out.push(incoming(Vertex::Word(parent.to_vec()), v.clone(), last as usize));
            }
            if w.is_empty() {
                for c in 0..3u32 {
                    out.push(outgoing(v.clone(), Vertex::Word(vec![c]), c as usize));
                }
            }
            Ok(out)
        });
        let g = GraphPresentation::generated(rule, 2);
        let err = window(&g, &Vertex::Word(vec![]), 1).unwrap_err();
        assert!(matches!(err, Error::DegreeViolation { degree: 3, bound: 2, .. }));
    }
}
