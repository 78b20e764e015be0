use thiserror::Error;

/// Everything an operation can refuse or fail with.  Refusals (`Gate*`,
/// `Resolution*`, `MemoryCap`) mean the inputs violate a validity condition
/// and no value is produced; `Diverged`/`Inconsistent` mean the computation
/// ran but its own diagnostics reject the output.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("spectral resolution inadequate: {detail}; suggest m >= {suggest_m} at xi_max = {suggest_xi_max}")]
    ResolutionInadequate {
        detail: String,
        suggest_m: usize,
        suggest_xi_max: f64,
    },

    #[error("window not integrable: tail mass ratio {ratio:.3e} exceeds {limit:.3e} at |x| > {x_window}")]
    WindowNotIntegrable {
        ratio: f64,
        limit: f64,
        x_window: f64,
    },

    #[error("endpoint extrapolation diverges (oscillatory growth near xi = 0+): {detail}")]
    EndpointDiverges { detail: String },

    #[error("admissibility gate violated: {0}")]
    Gate(String),

    #[error("memory cap exceeded: m = {requested} needs {bytes} bytes dense; use m <= {cap}")]
    MemoryCap {
        requested: usize,
        bytes: usize,
        cap: usize,
    },

    #[error("evaluation point {z} is not in the open upper half-plane")]
    NotUpperHalfPlane { z: String },

    #[error("solver diverged: {0}")]
    Diverged(String),

    #[error("internal cross-check failed: {what} (err = {err:.3e}, tol = {tol:.3e})")]
    Inconsistent { what: String, err: f64, tol: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
