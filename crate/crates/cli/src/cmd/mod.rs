pub mod graph;
pub mod index;
pub mod sobolev;
pub mod spec;
pub mod wave;

use crate::report::Inputs;

/// Per-invocation state shared by the commands.
#[derive(Debug, Default)]
pub struct Ctx {
    pub inputs: Inputs,
    pub tol: Option<f64>,
    /// Set once a command consumed `--tol`.
    pub tol_used: bool,
}

impl Ctx {
    /// `--tol` if given, else the command's default.
    pub fn tol_or(&mut self, default: f64) -> f64 {
        self.tol_used = true;
        self.tol.unwrap_or(default)
    }
}
