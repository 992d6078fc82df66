//! Computational laboratory for uniformly finite homology of graphs, the
//! sequence calculus of the line, matrix-scale spectral calculus, exact wave
//! propagation, Sobolev embedding norms on tori and Toeplitz/APS index
//! identities.
//!
//! Floating-point code is generic over [`Scalar`] (`f64`, `f32`); the
//! aliases below fix `f64`, which is what the command line uses.

pub mod error;
pub mod graph;
pub mod index;
pub mod scalar;
pub mod sobolev;
pub mod specops;
pub mod ufh;
pub mod wave;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type SymMatrix = specops::SymMatrix<f64>;
pub type BandedMatrix = specops::BandedMatrix<f64>;
pub type Spectrum = specops::Spectrum<f64>;
pub type NormalizingFunction = specops::NormalizingFunction<f64>;
pub type SpinorGridState = wave::SpinorGridState<f64>;
pub type TranslationModel = wave::TranslationModel<f64>;
pub type BandlimitedInput = wave::BandlimitedInput<f64>;
pub type TorusEmbeddingSpec = sobolev::TorusEmbeddingSpec<f64>;
pub type SchattenResult = sobolev::SchattenResult<f64>;
pub type LineOperator = index::LineOperator<f64>;
pub type MatrixPath = index::MatrixPath<f64>;
pub type ApsModel = index::ApsModel<f64>;
pub type PmModel = index::PmModel<f64>;
