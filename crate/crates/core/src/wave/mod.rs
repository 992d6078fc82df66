//! Exact one-dimensional Dirac evolution on grids aligned with the
//! characteristics, and band-limited functional calculus built from shifts.

mod bandlimited;
mod evolve;
mod state;

pub use bandlimited::{aliasing_error_bound, bandlimited_calculus, BandReport, BandlimitedInput, TranslationModel};
pub use evolve::{evolve, grid_steps, propagation_report, propagation_speed, BoundaryCondition, PropagationReport};
pub use state::{SpinorGridState, SUPPORT_THRESHOLD};
