use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum WaveError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow evaluating {0}")]
    Overflow(String),
    #[error("iteration failed to converge: {0}")]
    Convergence(String),
    #[error("evaluation point within {guard:.1e} of the ring singularity")]
    SingularPoint { guard: f64 },
    #[error("quadrature could not reach the requested tolerance: {0}")]
    Quadrature(String),
    #[error("seed is not on the requested level (residual {residual:.3e})")]
    SeedOffLevel { residual: f64 },
    #[error("stagnation point encountered while tracing (|grad| = {grad:.3e})")]
    StagnationEncountered { grad: f64 },
    #[error("no stagnation point bracketed in the search box")]
    NotFound,
    #[error("m = {m} yields only {found} free-surface extrema, {needed} needed")]
    InsufficientExtrema { m: u32, found: usize, needed: usize },
    #[error("wetted curves could not be made disjoint")]
    OverlapUnresolvable,
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("ballast plan infeasible: {0}")]
    Infeasible(String),
    #[error("restoring matrix block is not positive definite (min eigenvalue {0:.3e})")]
    StabilityViolation(f64),
}

pub type Result<T> = std::result::Result<T, WaveError>;
