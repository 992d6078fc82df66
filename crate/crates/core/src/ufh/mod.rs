//! Uniformly finite chains and their homology: the boundary map, integer
//! homology of finite graphs, the summability calculus of the line and the
//! half-line, and the constructive K-homology classification of graphs.

mod chain;
mod classify;
mod flow;
mod homology;
mod sequence;

pub use chain::{boundary1, boundary_dense, Chain, Chain0, Chain1, ChainRepr};
pub use classify::{
    circuit_chain, circuit_chain1, classify_k, k0_class_invariant, Answer, ClassifyOptions,
    Evidence, FlowSummary, FolnerWitness, K1Witness, KReport,
};
pub use flow::{circuit_cycle, divergence_one_flow, tail_chain, FlowCertificate, TailChain};
pub use homology::{boundary_matrix, homology_by_components, homology_finite, smith_diagonal, Homology};
pub use sequence::{
    line_invariant, EventuallyPeriodicSequence, K0LineClassInvariant, SCertificate, SDecision, Side,
};
