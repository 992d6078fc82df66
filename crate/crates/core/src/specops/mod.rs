//! Dense and banded spectral toolkit at matrix scale.

mod chebyshev;
mod io;
mod matrix;
mod normalizing;
mod spectrum;

pub use chebyshev::{chebyshev_banded, chebyshev_coefficients, chebyshev_eval, sup_error};
pub use io::{read_complex_csv, read_matrix_csv, write_complex_csv, write_matrix_csv};
pub use matrix::{max_abs, BandedMatrix, SymMatrix};
pub use normalizing::NormalizingFunction;
pub use spectrum::{
    apply_function, bounded_transform, cayley, eigensolve, eta, operator_norm, spectral_gap,
    unitarity_residual, Spectrum,
};
