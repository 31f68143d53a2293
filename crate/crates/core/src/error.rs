use crate::model::Eigenpair;

/// Unified error type for the whole library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// The (p, q) pair is not one of the supported family members.
    #[error("unsupported family member (p, q) = ({p}, {q})")]
    UnsupportedFamilyMember { p: i32, q: i32 },

    /// Evaluation requested at a pole of the potential (p < 0 at the origin).
    #[error("potential is singular at {coordinate} = 0 for p = {p}")]
    SingularPoint { p: i32, coordinate: &'static str },

    /// Parameters violate a precondition of a special-function routine.
    #[error("invalid special-function parameters: {reason}")]
    InvalidParams { reason: String },

    /// A series failed to meet its truncation criterion within the term cap.
    #[error("series did not converge within {max_terms} terms (|last term| = {last_term:e})")]
    ConvergenceFailure { max_terms: usize, last_term: f64 },

    /// The hypergeometric xi -> 1 limit diverges (c - a - b <= 0).
    #[error("2F1 diverges at xi = 1: c - a - b = {cab} <= 0")]
    DivergentLimit { cab: f64 },

    /// Series evaluation requested outside its radius of convergence.
    #[error("argument {xi} is outside the series radius {radius}")]
    OutOfRadius { xi: f64, radius: f64 },

    /// Adaptive continuation of the Heun ODE stalled before the target.
    #[error("Heun continuation stalled at xi = {last_xi} (target {target}): {reason}")]
    ContinuationFailure {
        last_xi: f64,
        target: f64,
        value: f64,
        derivative: f64,
        reason: &'static str,
    },

    /// The (-2, 0) spectrum formula turns complex for Vcal0 > 1/4.
    #[error("(-2,0) spectrum is complex for dimensionless depth {vcal0} > 1/4")]
    ComplexSpectrum { vcal0: f64 },

    /// Shooting integration overflowed even with running renormalization.
    #[error("shooting integration overflowed at z = {z} (E = {ecal})")]
    NumericalOverflow { z: f64, ecal: f64 },

    /// The origin is limit-circle (no self-adjoint shooting start exists).
    #[error("singular origin: no regular shooting start for this member/depth ({detail})")]
    SingularOrigin { detail: String },

    /// Fewer levels than requested were found; carries what was found.
    #[error("found {} of {requested} requested levels", found.len())]
    IncompleteSpectrum {
        requested: usize,
        found: Vec<Eigenpair>,
    },

    /// Parity labels failed to alternate even after scan refinement.
    #[error("parity ordering anomaly: levels do not alternate even/odd")]
    AnomalousOrdering { found: Vec<Eigenpair> },

    /// Recomputed eigenfunction has the wrong node count for its index.
    #[error("eigenfunction for level {level} has {counted} nodes (expected {level})")]
    QuantizationMisindex { level: usize, counted: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
