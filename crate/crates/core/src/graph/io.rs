//! JSON graph files.
//!
//! ```json
//! {"kind":"finite","vertices":3,"edges":[[0,1],[1,2],[2,0]]}
//! {"kind":"line_periodic","cell":{"vertices":2,"edges":[[0,1]]},"cross_edges":[[0,0,1],[1,1,1]]}
//! {"kind":"ray_periodic","head":{"vertices":1,"edges":[]},"cell":{"vertices":1,"edges":[]},
//!  "cross_edges":[[0,0,1]],"head_links":[[0,0,0]]}
//! {"kind":"window_generated","rule":"regular_tree","degree":3,"degree_bound":3}
//! {"kind":"window_generated","rule":"square_lattice","degree_bound":4}
//! ```
//!
//! Cell edges are intra-cell (shift 0); cross edges are `[u, v, shift]`
//! joining `u` in cell `n` to `v` in cell `n + shift`. Head links are
//! `[head vertex, cell vertex, cell index]`.

use serde::{Deserialize, Serialize};

use super::presentation::{
    FiniteGraph, GraphPresentation, HeadLink, PeriodicEdge, RegularTree, SquareLattice,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellFile {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphFile {
    Finite {
        vertices: usize,
        #[serde(default)]
        edges: Vec<[usize; 2]>,
    },
    LinePeriodic {
        cell: CellFile,
        #[serde(default)]
        cross_edges: Vec<(usize, usize, i64)>,
    },
    RayPeriodic {
        #[serde(default)]
        head: CellFile,
        cell: CellFile,
        #[serde(default)]
        cross_edges: Vec<(usize, usize, i64)>,
        #[serde(default)]
        head_links: Vec<(usize, usize, u64)>,
    },
    WindowGenerated {
        rule: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<u32>,
        degree_bound: usize,
    },
}

fn periodic_edges(cell: &CellFile, cross: &[(usize, usize, i64)]) -> Vec<PeriodicEdge> {
    cell.edges
        .iter()
        .map(|&[s, t]| PeriodicEdge {
            source: s,
            target: t,
            shift: 0,
        })
        .chain(cross.iter().map(|&(s, t, shift)| PeriodicEdge {
            source: s,
            target: t,
            shift,
        }))
        .collect()
}

fn check_cell(field: &str, cell: &CellFile) -> Result<()> {
    for (i, &[s, t]) in cell.edges.iter().enumerate() {
        if s >= cell.vertices || t >= cell.vertices {
            return Err(Error::invalid(format!(
                "{field}.edges[{i}]: endpoint out of range for {} vertices",
                cell.vertices
            )));
        }
    }
    Ok(())
}

fn check_cross(cell: &CellFile, cross: &[(usize, usize, i64)]) -> Result<()> {
    for (i, &(s, t, _)) in cross.iter().enumerate() {
        if s >= cell.vertices || t >= cell.vertices {
            return Err(Error::invalid(format!(
                "cross_edges[{i}]: endpoint out of range for a cell of {} vertices",
                cell.vertices
            )));
        }
    }
    Ok(())
}

impl GraphFile {
    pub fn into_presentation(self) -> Result<GraphPresentation> {
        match self {
            GraphFile::Finite { vertices, edges } => Ok(GraphPresentation::Finite(
                FiniteGraph::new(vertices, edges.into_iter().map(|[s, t]| (s, t)).collect())?,
            )),
            GraphFile::LinePeriodic { cell, cross_edges } => {
                check_cell("cell", &cell)?;
                check_cross(&cell, &cross_edges)?;
                GraphPresentation::line_periodic(cell.vertices, periodic_edges(&cell, &cross_edges))
            }
            GraphFile::RayPeriodic {
                head,
                cell,
                cross_edges,
                head_links,
            } => {
                check_cell("head", &head)?;
                check_cell("cell", &cell)?;
                check_cross(&cell, &cross_edges)?;
                let head_graph = FiniteGraph::new(
                    head.vertices,
                    head.edges.iter().map(|&[s, t]| (s, t)).collect(),
                )?;
                GraphPresentation::ray_periodic(
                    head_graph,
                    cell.vertices,
                    periodic_edges(&cell, &cross_edges),
                    head_links
                        .into_iter()
                        .map(|(head, local, cell)| HeadLink { head, local, cell })
                        .collect(),
                )
            }
            GraphFile::WindowGenerated {
                rule,
                degree,
                degree_bound,
            } => {
                if degree_bound == 0 {
                    return Err(Error::invalid("degree_bound: must be positive"));
                }
                match rule.as_str() {
                    "regular_tree" => {
                        let d = degree
                            .ok_or_else(|| Error::invalid("degree: required for rule regular_tree"))?;
                        if d < 2 {
                            return Err(Error::invalid("degree: must be at least 2"));
                        }
                        Ok(GraphPresentation::generated(RegularTree { degree: d }, degree_bound))
                    }
                    "square_lattice" => Ok(GraphPresentation::generated(SquareLattice, degree_bound)),
                    other => Err(Error::invalid(format!(
                        "rule: unknown built-in {other:?} (expected regular_tree or square_lattice)"
                    ))),
                }
            }
        }
    }

    /// File form of a presentation. User closures have no file form.
    pub fn from_presentation(pres: &GraphPresentation) -> Result<Self> {
        let split = |edges: &[PeriodicEdge]| {
            let intra = edges
                .iter()
                .filter(|e| e.shift == 0)
                .map(|e| [e.source, e.target])
                .collect();
            let cross = edges
                .iter()
                .filter(|e| e.shift != 0)
                .map(|e| (e.source, e.target, e.shift))
                .collect();
            (intra, cross)
        };
        Ok(match pres {
            GraphPresentation::Finite(g) => GraphFile::Finite {
                vertices: g.vertex_count(),
                edges: g.edges().iter().map(|&(s, t)| [s, t]).collect(),
            },
            GraphPresentation::LinePeriodic {
                cell_vertices,
                edges,
            } => {
                let (intra, cross) = split(edges);
                GraphFile::LinePeriodic {
                    cell: CellFile {
                        vertices: *cell_vertices,
                        edges: intra,
                    },
                    cross_edges: cross,
                }
            }
            GraphPresentation::RayPeriodic {
                head,
                cell_vertices,
                edges,
                links,
            } => {
                let (intra, cross) = split(edges);
                GraphFile::RayPeriodic {
                    head: CellFile {
                        vertices: head.vertex_count(),
                        edges: head.edges().iter().map(|&(s, t)| [s, t]).collect(),
                    },
                    cell: CellFile {
                        vertices: *cell_vertices,
                        edges: intra,
                    },
                    cross_edges: cross,
                    head_links: links.iter().map(|l| (l.head, l.local, l.cell)).collect(),
                }
            }
            GraphPresentation::WindowGenerated(g) => {
                let name = g.rule.describe();
                if name == "square_lattice" {
                    GraphFile::WindowGenerated {
                        rule: name,
                        degree: None,
                        degree_bound: g.degree_bound,
                    }
                } else if let Some(d) = name
                    .strip_prefix("regular_tree(")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.parse().ok())
                {
                    GraphFile::WindowGenerated {
                        rule: "regular_tree".into(),
                        degree: Some(d),
                        degree_bound: g.degree_bound,
                    }
                } else {
                    return Err(Error::unsupported(format!("rule {name} has no file form")));
                }
            }
        })
    }
}

/// Parses and validates a graph file. Syntax errors carry line and column.
pub fn parse_graph(text: &str) -> Result<GraphPresentation> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("graph JSON: {e}")))?;
    file.into_presentation()
}

pub fn graph_to_json(pres: &GraphPresentation) -> Result<String> {
    serde_json::to_string(&GraphFile::from_presentation(pres)?)
        .map_err(|e| Error::invalid(e.to_string()))
}
