//! Reflection extension coefficients and Schatten norms of Sobolev
//! embeddings on tori.

mod reflection;
mod torus;

pub use reflection::{extend_reflect, reflection_coefficients, Extension, ReflectionCoefficients, MAX_REFLECTION_ORDER};
pub use torus::{
    convergence_classify, schatten_norm_matrix, torus_schatten_norm, SchattenResult, TorusEmbeddingSpec,
    MAX_LATTICE_POINTS,
};
