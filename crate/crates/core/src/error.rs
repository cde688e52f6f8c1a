//! Error types shared across the library.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A coupling strength that must be strictly positive is not.
    #[error("coupling `{field}` must be > 0, got {value}")]
    NonPositiveCoupling { field: &'static str, value: f64 },

    /// An entrance photon flux is negative.
    #[error("photon flux `{field}` must be >= 0, got {value}")]
    NegativeFlux { field: &'static str, value: f64 },

    /// Some other parameter violates its invariant.
    #[error("parameter `{field}` is invalid: {reason} (got {value})")]
    InvalidParameter {
        field: &'static str,
        reason: &'static str,
        value: f64,
    },

    /// Carrier frequencies do not satisfy the multiphoton resonance
    /// condition w3 = w1 + w2 within relative tolerance 1e-12.
    #[error("multiphoton resonance violated: |w1 + w2 - w3| = {residual:e} exceeds 1e-12 * w3")]
    ResonanceViolation { residual: f64 },

    /// Argument outside the domain of a special function.
    #[error("domain error in {what}: {detail}")]
    DomainError { what: &'static str, detail: String },

    /// Third-kind elliptic integral evaluated at or across its Cauchy
    /// singularity r*sin^2(amplitude) >= 1.
    #[error("elliptic Pi characteristic singular: r*sin^2(gamma) = {value} >= 1")]
    SingularCharacteristic { value: f64 },

    /// Two eigenvalue branches coincide; adiabatic following is undefined.
    #[error("eigenvalue branches degenerate within {gap:e}; cannot select adiabatic branch")]
    BranchAmbiguity { gap: f64 },

    /// The derivative dG/dlambda vanishes at the requested state.
    #[error("dG/dlambda coefficient a0 vanishes ({value:e}); conversion coefficient undefined")]
    VanishingA0 { value: f64 },

    /// The oscillation roots of the exchange polynomial are complex.
    #[error("exchange-polynomial roots are complex (discriminant {discriminant:e}); no oscillation regime")]
    NoOscillationRegime { discriminant: f64 },

    /// A closed-form inversion relation failed its monotonicity guard.
    #[error("inversion relation is not monotone on [0, eta0) for these couplings")]
    NonMonotoneRelation,

    /// A regime precondition equation is violated.
    #[error("regime condition violated: |residual| = {residual:e}")]
    ConditionViolated { residual: f64 },

    /// mu2 >= mu3 where the depleted maximum-coherence solution requires mu2 < mu3.
    #[error("coupling ordering mu2 < mu3 required, got mu2 = {mu2}, mu3 = {mu3}")]
    MuOrdering { mu2: f64, mu3: f64 },

    /// No parameter value can satisfy the requested tuning.
    #[error("no solution for requested tuning: {detail}")]
    NoSolution { detail: String },

    /// Division by zero in an efficiency ratio.
    #[error("division by zero: {what}")]
    DivisionByZero { what: &'static str },

    /// Mismatched sample grids.
    #[error("grid mismatch: {detail}")]
    GridMismatch { detail: String },

    /// Adaptive integrator step size collapsed below the floor.
    #[error("stiffness failure at z = {z}: step {step:e} below floor {floor:e}")]
    StiffnessFailure { z: f64, step: f64, floor: f64 },

    /// Newton iteration for the tracked eigenvalue diverged.
    #[error("eigenvalue branch lost at z = {z} (Newton residual {residual:e})")]
    BranchLoss { z: f64, residual: f64 },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: error estimate {estimate:e} > {requested:e}")]
    NonConvergence { estimate: f64, requested: f64 },

    /// Non-finite number produced during an integration.
    #[error("non-finite value encountered in {what}")]
    NonFinite { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal diagnostics produced by validation and regime guards.
#[derive(Debug, Clone, PartialEq)]
pub struct Warning {
    pub what: String,
}

impl Warning {
    pub fn new(what: impl Into<String>) -> Self {
        Warning { what: what.into() }
    }
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "warning: {}", self.what)
    }
}
