//! Toeplitz-type indices on the line, spectral flow, and the half-cylinder
//! kernel against the spectral projection of a gapped boundary operator.

mod aps;
mod compressed;
mod flow;
mod line;

pub use aps::{
    aps_positive_count, principal_angles, rho_aps_consistency, rho_projection, ApsCount, ApsModel, ConsistencyReport,
    ModeIntegral,
};
pub use compressed::{
    compressed_index, compressed_index_with, momentum_symbol, pm_index, pm_index_with, symbol_samples, winding_number, PmModel, Stabilized, WindowCount,
    WindowIndexResult, NULL_FRACTION, SINGULAR_SYMBOL_TOL, SYMBOL_SAMPLES,
};
pub use flow::{spectral_flow, Crossing, MatrixPath, SpectralFlowReport};
pub use line::{Coefficient, DiagonalSpec, LineOperator, LineOperatorFile};
