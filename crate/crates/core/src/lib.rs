//! Pulsed three-wave frequency conversion in resonant three-level media.
//!
//! The crate computes sum-frequency generation assisted by
//! electromagnetically induced transparency (EIT) or by a prepared atomic
//! coherence, with pump depletion fully included. The adiabatic reduction
//! maps the propagation problem onto a one-dimensional pendulum for the
//! exchanged photon flux J(z), solved in closed form through incomplete
//! elliptic integrals; every analytic result is cross-validated against
//! direct numerical integration of the canonical equations and of the full
//! Maxwell-Bloch system.
//!
//! Module map:
//! - [`model`]: domain types, unit conventions, validation, background
//!   refraction and the residual phase mismatch.
//! - [`specfun`]: elliptic integrals (Carlson forms), Jacobi sn, cubic
//!   solver, inverse hyperbolic tangent.
//! - [`hamiltonian`]: entrance eigenvalue, conserved quantities, mismatch
//!   coefficients, oscillation roots, the implicit solution z(J) and its
//!   inversion, phase trajectory, adiabatic atomic state.
//! - [`regimes`]: closed-form regime solutions (EIT, maximum coherence,
//!   conventional far-off-resonance mixing), compensation tunings,
//!   efficiency metrics.
//! - [`oracle`]: canonical and Maxwell-Bloch integrators plus quadrature
//!   oracles, kept independent of the analytic path.
//! - [`parallel`]: rayon-backed data-parallel dispatch with a sequential
//!   fallback (feature `parallel`, on by default).

pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod oracle;
pub mod parallel;
pub mod regimes;
pub mod specfun;
pub mod tolerances;

pub use error::{Error, Result, Warning};
pub use hamiltonian::{exchange_at, AdiabaticSolution, Branch, ExchangeState};
pub use model::{BackgroundTransition, BoundaryFields, Envelope, MediumParams};
pub use oracle::{IntegratorConfig, SpaceTimeGrid};
pub use parallel::ExecMode;
pub use regimes::{RegimeSpec, RegimeTag};
