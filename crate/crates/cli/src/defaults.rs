//! Every default the command line uses, in one place.
//!
//! `--tol` overrides the one tolerance listed as `tol` for a command; other
//! commands ignore it and say so in the report warnings. The table is also
//! printed by `uflab --help`.

use uflab::graph::DEFAULT_ENDS_RADIUS;
use uflab::index::NULL_FRACTION;

/// Symmetry check for matrix inputs, relative to max |a_ij|.
/// `tol` for `spec eigen|eta|cayley|cheb` and `index aps|rho|consistency`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Divergence-one flow capacity (`graph classify`, `flow find`).
pub const FLOW_CAPACITY: i64 = 2;
/// Window radii a flow must exist on before the graph counts as nonamenable.
pub const FLOW_RADII: &str = "2,3,4,5,6";
/// Window radius for `flow find`.
pub const FLOW_RADIUS: usize = 4;
/// Boundary/volume ratio below which a ball counts as a Følner witness.
pub const FOLNER_EPSILON: f64 = 0.2;
pub const FOLNER_RADII: &str = "1-16";
/// Outer radius for end counting and cycle probes.
pub const PROBE_RADIUS: usize = DEFAULT_ENDS_RADIUS;

/// Eigenvalues with |λ| at or below this fraction of ‖A‖ count as zero (`spec eta`).
pub const ETA_ZERO_FRACTION: f64 = 1e-9;
/// `tol` for `index flow`: eigenvalues within this of 0 keep their sign.
pub const FLOW_ZERO_TOL: f64 = 1e-9;
/// Linear interpolation points inserted between consecutive path samples.
pub const FLOW_STEPS: usize = 16;

/// `tol` for `index compressed|pm`: section singular values below this
/// fraction of min(1, min σ(symbol)) count as zero.
pub const INDEX_NULL_FRACTION: f64 = NULL_FRACTION;
pub const INDEX_WINDOWS: &str = "16,32,64";
/// Circle samples for the winding number and the Cayley symbol.
pub const SYMBOL_SAMPLES: usize = 1024;
pub const PM_COPIES: usize = 1;

pub const APS_HORIZON: f64 = 1.0;
pub const APS_STEP: f64 = 0.01;
pub const APS_DIVERGENCE: f64 = 1e12;
/// Relative change of the mode integral that counts as converged.
pub const APS_STABILITY: f64 = 1e-10;
/// Degree of the Chebyshev sign function (`--chi chebyshev-sign`).
pub const CHEB_SIGN_DEGREE: usize = 15;
/// χ is built for gap c·(1 − margin) so it is admissible at c itself.
pub const CHI_GAP_MARGIN: f64 = 1e-6;

/// Speed bound for `wave report`.
pub const WAVE_SPEED: f64 = 1.0;

pub const TORUS_CUTOFF: u64 = 1_000_000;
pub const REFLECT_NEGATIVE: usize = 0;

/// Rows of the table shown in `--help`.
pub const TABLE: &[(&str, &str, &str)] = &[
    ("symmetry tol", "1e-12", "matrix inputs, relative to max |a_ij|; --tol for spec and index aps|rho|consistency"),
    ("flow capacity", "2", "graph classify, flow find"),
    ("flow radii", FLOW_RADII, "graph classify"),
    ("flow radius", "4", "flow find"),
    ("Følner epsilon", "0.2", "graph classify"),
    ("Følner radii", FOLNER_RADII, "graph classify"),
    ("probe radius", "6", "graph classify, graph ends"),
    ("eta zero fraction", "1e-9", "spec eta: |λ| ≤ fraction·‖A‖ is dropped"),
    ("flow zero tol", "1e-9", "--tol for index flow"),
    ("flow steps", "16", "index flow interpolation"),
    ("null fraction", "0.5", "--tol for index compressed|pm"),
    ("windows", INDEX_WINDOWS, "index compressed|pm"),
    ("symbol samples", "1024", "index compressed|pm"),
    ("APS horizon/step", "1, 0.01", "index aps|consistency"),
    ("APS divergence", "1e12", "index aps|consistency"),
    ("APS stability", "1e-10", "index aps|consistency"),
    ("Chebyshev sign degree", "15", "index rho|consistency"),
    ("χ gap margin", "1e-6", "index rho|consistency: χ built for gap c(1 − margin)"),
    ("wave speed", "1", "wave report"),
    ("torus cutoff", "1000000", "sobolev torus-schatten"),
];

pub fn help_table() -> String {
    let mut s = String::from("Defaults:\n");
    for (name, value, used) in TABLE {
        s.push_str(&format!("  {name:<22} {value:<12} {used}\n"));
    }
    s
}
