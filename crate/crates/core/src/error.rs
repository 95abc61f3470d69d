use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Payloads are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("energy {energy} is degenerate for the closed-form solutions ({reason})")]
    DegenerateEnergy { energy: f64, reason: &'static str },

    #[error("Darboux transformation is singular at x = {x}")]
    SingularTransform { x: f64 },

    #[error("Lyapunov function at E = {energy} has imaginary part {imag} (branch error)")]
    NonRealDiscriminant { energy: f64, imag: f64 },

    #[error("stencil [{lo}, {hi}] leaves the evaluation domain")]
    Domain { lo: f64, hi: f64 },

    #[error("invalid finite-difference step {0}")]
    InvalidStep(f64),

    #[error("band edges near E = {energy} cannot be separated at tolerance {tol}; refine the grid")]
    GridTooCoarse { energy: f64, tol: f64 },

    #[error("interval [{lo}, {hi}] is not an allowed band (|D| = {d_abs} at E = {energy})")]
    NotAllowedBand { lo: f64, hi: f64, energy: f64, d_abs: f64 },

    #[error("{steps} integration steps give det(monodromy) - 1 = {det_error}; increase the step count")]
    StepCountTooSmall { steps: usize, det_error: f64 },

    #[error("tabulated potential: {0}")]
    Tabulation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
