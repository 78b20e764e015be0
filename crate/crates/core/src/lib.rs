//! Spectral toolkit for a dispersive model on the line: Hardy-space
//! projection and operator calculus on the half-line frequency grid, an
//! explicit resolvent-based evolution formula, its zero-dispersion limit in
//! three independent forms (operator, log-integral, characteristics), a
//! pseudospectral PDE solver for cross-validation, and multilinear integral
//! identity checks.

pub mod error;
pub mod quad;
pub mod grid;
pub mod family;
pub mod osc;
pub mod hardy;
pub mod toeplitz;
pub mod generator;
pub mod branch;
pub mod zdlog;
pub mod pde;
pub mod identity;

pub use error::{CoreError, Result};
pub use family::InitialData;
pub use generator::{Generator, GeneratorSpec, PiUValue};
pub use grid::{BoxGrid, SpectralGrid};
pub use hardy::HardyFunction;
pub use identity::{IdentityReport, MomentReport, TestFunction};
pub use pde::{SolverState, StepperConfig};
pub use toeplitz::ToeplitzSymbol;

/// Numerical tolerances shared across operations.  Defaults are the
/// contract values; callers may tighten or relax per experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// adaptive quadrature target
    pub quad: f64,
    /// agreement between independent routes to the same quantity
    pub consistency: f64,
    /// admissible relative spectral tail at xi_max
    pub tail: f64,
    /// admissible relative data mass outside the physical window
    pub window: f64,
    /// relative residual of linear solves
    pub solve: f64,
    /// formula-vs-formula cross-validation
    pub cross_formula: f64,
    /// PDE-vs-formula cross-validation
    pub cross_pde: f64,
    /// root localization
    pub root: f64,
    /// characteristics vs branch sum in the single-branch regime
    pub simple: f64,
    /// branch sum vs boundary-value extrapolation across folds
    pub recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad: 1e-9,
            consistency: 1e-7,
            tail: 1e-6,
            window: 1e-4,
            solve: 1e-10,
            cross_formula: 1e-6,
            cross_pde: 1e-3,
            root: 1e-12,
            simple: 1e-6,
            recon: 1e-3,
        }
    }
}
