//! Bounded-geometry graphs given by finite data: finite multigraphs,
//! periodic covers of the line and the half-line, and rule-generated graphs
//! that are only ever seen through finite windows.

mod io;
mod presentation;
mod structure;
mod window;

pub use io::{graph_to_json, parse_graph, CellFile, GraphFile};
pub use presentation::{
    build_finite_graph, incoming, outgoing, EdgeKey, EdgeRule, FiniteGraph, FnRule,
    GeneratedGraph, GraphPresentation, HeadLink, Incidence, PeriodicEdge, RegularTree,
    SquareLattice, Vertex,
};
pub use structure::{
    components, count_ends, count_ends_with, is_connected, is_forest, Components, Cycle, Ends,
    EndsReport, ForestDecision, DEFAULT_ENDS_RADIUS,
};
pub(crate) use structure::{drifting_cycle, find_cycle};
pub use window::{window, Subgraph, Window};
