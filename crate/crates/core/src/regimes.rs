//! Closed-form regime solutions, compensation tunings and efficiency
//! metrics.
//!
//! Five regimes are distinguished by which field is strong and which
//! detuning dominates:
//!
//! - EIT, undepleted drive: strong resonant omega2 field, weak omega1 pump;
//!   sinusoidal small-signal conversion.
//! - EIT, depleted pumps: equal inputs, matched; monotone complete
//!   conversion through an inverse-tanh relation.
//! - Maximum coherence, undepleted: prepared 1-2 coherence acts as a local
//!   oscillator for a weak omega2 field, far-detuned excited state.
//! - Maximum coherence, depleted: equal inputs with a tuned superposition;
//!   monotone conversion with rescaled rate.
//! - Conventional: both detunings large, weak excitation; the textbook
//!   sn^2 / sinc^2 behavior.
//!
//! Validity guards warn rather than fail so breakdown can be probed
//! deliberately.

use crate::error::{Error, Result, Warning};
use crate::model::{rabi, BoundaryFields, MediumParams};
use crate::specfun;

/// Regime discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeTag {
    EitUndepleted,
    EitDepleted,
    MaxCohUndepleted,
    MaxCohDepleted,
    Conventional,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeTag::EitUndepleted => "eit-undepleted",
            RegimeTag::EitDepleted => "eit-depleted",
            RegimeTag::MaxCohUndepleted => "maxcoh-undepleted",
            RegimeTag::MaxCohDepleted => "maxcoh-depleted",
            RegimeTag::Conventional => "conventional",
        };
        f.write_str(s)
    }
}

/// Undepleted atomic coherence supplied by the caller for the
/// maximum-coherence linear formulas (the preparation itself is not
/// modeled).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceState {
    /// |c1* c2|.
    pub rho12: f64,
    pub c1_sq: f64,
    pub c2_sq: f64,
}

impl CoherenceState {
    /// Maximum coherence: equal superposition amplitudes.
    pub fn maximal() -> Self {
        CoherenceState {
            rho12: 0.5,
            c1_sq: 0.5,
            c2_sq: 0.5,
        }
    }

    /// Superposition (|1> - zeta |2>)/sqrt(1 + zeta^2).
    pub fn from_zeta(zeta: f64) -> Self {
        let n = 1.0 + zeta * zeta;
        CoherenceState {
            rho12: zeta / n,
            c1_sq: 1.0 / n,
            c2_sq: zeta * zeta / n,
        }
    }
}

/// Linear-regime parameters of a tagged regime: conversion coefficient,
/// loss coefficient and total phase mismatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeSpec {
    pub tag: RegimeTag,
    pub kappa: f64,
    pub gamma_loss: f64,
    pub delta_k_prime: f64,
    /// Superposition ratio for the depleted maximum-coherence regime.
    pub zeta: Option<f64>,
}

const GUARD_FACTOR: f64 = 10.0;
const GUARD_RATIO: f64 = 0.1;

/// Conversion coefficient, loss coefficient and total mismatch for a tagged
/// regime. For the maximum-coherence tags the (undepleted) atomic coherence
/// may be supplied; it defaults to the maximal superposition for the
/// undepleted tag and to the tuned zeta superposition for the depleted one.
pub fn regime_parameters(
    tag: RegimeTag,
    params: &MediumParams,
    boundary: &BoundaryFields,
    coherence: Option<CoherenceState>,
) -> Result<(RegimeSpec, Vec<Warning>)> {
    let n = params.n_density;
    let om1 = rabi(params.mu1, boundary.eta10)?;
    let om2 = rabi(params.mu2, boundary.eta20)?;
    let om3 = rabi(params.mu3, boundary.eta30)?;
    let om_max = om1.max(om2).max(om3);
    let mut warnings = Vec::new();

    let spec = match tag {
        RegimeTag::EitUndepleted | RegimeTag::EitDepleted => {
            if om2 < GUARD_FACTOR * om1.max(om3).max(params.gamma).max(params.delta2.abs()) {
                warnings.push(Warning::new(format!(
                    "EIT hierarchy |Omega2| >> |Omega1|,|Omega3|,gamma,|delta2| marginal: Omega2 = {om2:.3e}"
                )));
            }
            if om2 == 0.0 {
                return Err(Error::DivisionByZero {
                    what: "EIT regime with Omega2 = 0",
                });
            }
            RegimeSpec {
                tag,
                kappa: 0.5 * n * (params.mu1 * params.mu3).sqrt() / om2,
                gamma_loss: params.gamma / om2 * (params.mu1 / params.mu3).sqrt(),
                delta_k_prime: params.delta_k - 0.5 * n * params.mu3 * params.delta2 / (om2 * om2),
                zeta: None,
            }
        }
        RegimeTag::MaxCohUndepleted | RegimeTag::MaxCohDepleted => {
            let coh = coherence.unwrap_or_else(|| {
                if tag == RegimeTag::MaxCohDepleted && params.mu2 < params.mu3 {
                    CoherenceState::from_zeta((params.mu3 / (params.mu3 - params.mu2)).sqrt())
                } else {
                    CoherenceState::maximal()
                }
            });
            let dist = (params.delta3 * params.delta3 + params.gamma * params.gamma).sqrt();
            if dist < GUARD_FACTOR * om_max {
                warnings.push(Warning::new(format!(
                    "far-detuning |delta3 + i gamma| >> Omega_j marginal: {dist:.3e} vs {om_max:.3e}"
                )));
            }
            if params.delta3 == 0.0 {
                return Err(Error::DivisionByZero {
                    what: "maximum-coherence regime with delta3 = 0",
                });
            }
            let s23 = (params.mu2 * params.mu3).sqrt();
            let zeta = if tag == RegimeTag::MaxCohDepleted && params.mu2 < params.mu3 {
                Some((params.mu3 / (params.mu3 - params.mu2)).sqrt())
            } else {
                None
            };
            RegimeSpec {
                tag,
                kappa: (0.5 * n * s23 * coh.rho12 / params.delta3).abs(),
                gamma_loss: (params.gamma / params.delta3
                    * (params.mu2 * coh.c2_sq + params.mu3 * coh.c1_sq)
                    / (coh.rho12 * s23))
                    .abs(),
                delta_k_prime: params.delta_k
                    + 0.5 * n * (params.mu3 * coh.c1_sq - params.mu2 * coh.c2_sq) / params.delta3,
                zeta,
            }
        }
        RegimeTag::Conventional => {
            if params.delta2.abs().min(params.delta3.abs())
                < GUARD_FACTOR * om_max.max(params.gamma)
            {
                warnings.push(Warning::new(format!(
                    "weak-excitation hierarchy |delta2|,|delta3| >> Omega_j,gamma marginal: deltas ({}, {})",
                    params.delta2, params.delta3
                )));
            }
            if params.delta2 == 0.0 || params.delta3 == 0.0 {
                return Err(Error::DivisionByZero {
                    what: "conventional regime with a zero detuning",
                });
            }
            RegimeSpec {
                tag,
                kappa: (0.5 * n * om2 * (params.mu1 * params.mu3).sqrt()
                    / (params.delta2 * params.delta3))
                    .abs(),
                gamma_loss: (params.gamma / params.delta3
                    * (params.mu1 / params.mu3).sqrt()
                    * params.delta2
                    / om2)
                    .abs(),
                delta_k_prime: params.delta_k
                    + 0.5 * n * (params.mu3 / params.delta3 - params.mu1 / params.delta2),
                zeta: None,
            }
        }
    };
    Ok((spec, warnings))
}

/// Small-signal (linear) generated flux
/// eta3(z) = eta_in / (1 + x^2) * exp(-Gamma kappa z) * sin^2(kappa z sqrt(1 + x^2)),
/// x = dk' / (2 kappa).
pub fn linear_solution(spec: &RegimeSpec, eta_in: f64, z: f64) -> f64 {
    let x = spec.delta_k_prime / (2.0 * spec.kappa);
    let s = (spec.kappa * z * (1.0 + x * x).sqrt()).sin();
    eta_in / (1.0 + x * x) * (-spec.gamma_loss * spec.kappa * z).exp() * s * s
}

/// Density-length product N z at the first conversion maximum of the matched
/// linear solution: pi N / (2 kappa).
pub fn optimal_length(spec: &RegimeSpec, n_density: f64) -> f64 {
    std::f64::consts::PI * n_density / (2.0 * spec.kappa)
}

fn bisect_monotone(f: impl Fn(f64) -> f64, target: f64) -> f64 {
    // invert an increasing f on u in [0, 1)
    let mut lo = 0.0f64;
    let mut hi = 1.0 - 1e-16;
    if f(hi) <= target {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-17 {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn check_monotone(f: &impl Fn(f64) -> f64) -> Result<()> {
    let mut prev = f(0.0);
    for k in 1..200 {
        let u = k as f64 / 200.0;
        let v = f(u);
        if v <= prev {
            return Err(Error::NonMonotoneRelation);
        }
        prev = v;
    }
    Ok(())
}

/// Depleted EIT conversion for equal matched inputs eta10 = eta20 = eta0:
/// J(z) from the monotone relation
///
/// ```text
/// (mu2/mu3) kappa_e z = arth(u) + ((mu1 + mu2 - mu3)/mu3) u,  u = sqrt(J/eta0)
/// ```
///
/// inverted by bisection. J rises monotonically to eta0: complete
/// conversion of both pumps.
pub fn eit_depleted(z: f64, params: &MediumParams, eta0: f64) -> Result<f64> {
    if z <= 0.0 {
        return Ok(0.0);
    }
    let kap_e = 0.5 * params.n_density * (params.mu1 * params.mu3 / (params.mu2 * eta0)).sqrt();
    let c = (params.mu1 + params.mu2 - params.mu3) / params.mu3;
    let rel = move |u: f64| u.atanh() + c * u;
    check_monotone(&rel)?;
    let u = bisect_monotone(rel, params.mu2 / params.mu3 * kap_e * z);
    Ok(eta0 * u * u)
}

/// Mismatched equal-input EIT conversion and the period estimate.
///
/// Returns (J, z_e) with
///
/// ```text
/// J  = eta0 (1 - e) sn^2[ kappa_e z sqrt(1 + e); sqrt(J1/J2) ],  e = dk'/(2 kappa_e),
/// z_e = ln(16 kappa_e / dk') / kappa_e,
/// ```
///
/// the linearized oscillation roots J_{2,1} = eta0 (1 +- e).
pub fn eit_mismatch(
    z: f64,
    params: &MediumParams,
    eta0: f64,
    delta_k_prime: f64,
) -> Result<(f64, f64)> {
    let kap_e = 0.5 * params.n_density * (params.mu1 * params.mu3 / (params.mu2 * eta0)).sqrt();
    let e = delta_k_prime / (2.0 * kap_e);
    if e.abs() >= 1.0 {
        return Err(Error::DomainError {
            what: "eit_mismatch",
            detail: format!("|dk'/2 kappa_e| = {} >= 1", e.abs()),
        });
    }
    let j1 = eta0 * (1.0 - e);
    let j2 = eta0 * (1.0 + e);
    let p = (j1 / j2).sqrt();
    let sn = specfun::jacobi_sn(kap_e * z * (1.0 + e).sqrt(), p)?;
    let period = if delta_k_prime > 0.0 {
        (16.0 * kap_e / delta_k_prime).ln() / kap_e
    } else {
        f64::INFINITY
    };
    Ok((j1 * sn * sn, period))
}

/// Undepleted maximum-coherence conversion (strong omega1, weak omega2):
/// sinusoidal with kappa_m = (N/4) sqrt(mu2 mu3)/delta3 and the total
/// mismatch including the 1-2 refraction term.
pub fn maxcoh_undepleted(
    z: f64,
    params: &MediumParams,
    boundary: &BoundaryFields,
) -> Result<(f64, Vec<Warning>)> {
    let mut warnings = Vec::new();
    if boundary.eta20 > GUARD_RATIO * boundary.eta10 {
        warnings.push(Warning::new(format!(
            "undepleted-coherence hierarchy eta20 << eta10 marginal: ratio {:.3}",
            boundary.eta20 / boundary.eta10
        )));
    }
    if params.delta3 == 0.0 {
        return Err(Error::DivisionByZero {
            what: "maxcoh_undepleted with delta3 = 0",
        });
    }
    let n = params.n_density;
    let kap_m = 0.25 * n * (params.mu2 * params.mu3).sqrt() / params.delta3;
    let dkp = params.delta_k
        - 0.25
            * n
            * ((params.mu1 / boundary.eta10).sqrt() + (params.mu2 - params.mu3) / params.delta3);
    let x = dkp / (2.0 * kap_m);
    let s = (kap_m * z * (1.0 + x * x).sqrt()).sin();
    Ok((boundary.eta20 / (1.0 + x * x) * s * s, warnings))
}

/// Residual of the depleted maximum-coherence tuning condition
/// mu3 eta0 = mu1 delta3^2 / (mu3 - mu2).
pub fn maxcoh_condition_residual(params: &MediumParams, eta0: f64) -> Result<f64> {
    if params.mu2 >= params.mu3 {
        return Err(Error::MuOrdering {
            mu2: params.mu2,
            mu3: params.mu3,
        });
    }
    Ok(params.mu3 * eta0 - params.mu1 * params.delta3 * params.delta3 / (params.mu3 - params.mu2))
}

/// Depleted maximum-coherence conversion for equal inputs under the tuned
/// condition (delta2 = 0, residual mismatch cancelled, delta3 chosen so the
/// linear mismatch coefficient vanishes):
///
/// ```text
/// kappa_m (2/zeta) z = arth(u) - ((mu1 + mu2 - mu3)/mu3) u,
/// zeta = sqrt(mu3/(mu3 - mu2)),
/// ```
///
/// monotone complete conversion, rate (N/2) sqrt(mu1 mu2 / (mu3 eta0)).
pub fn maxcoh_depleted(z: f64, params: &MediumParams, eta0: f64) -> Result<f64> {
    let residual = maxcoh_condition_residual(params, eta0)?;
    if residual.abs() > 1e-9 * (params.mu3 * eta0).abs() {
        return Err(Error::ConditionViolated {
            residual: residual.abs(),
        });
    }
    if z <= 0.0 {
        return Ok(0.0);
    }
    let rate = 0.5 * params.n_density * (params.mu1 * params.mu2 / (params.mu3 * eta0)).sqrt();
    let c = (params.mu1 + params.mu2 - params.mu3) / params.mu3;
    let rel = move |u: f64| u.atanh() - c * u;
    check_monotone(&rel)?;
    let u = bisect_monotone(rel, rate * z);
    Ok(eta0 * u * u)
}

/// Conventional (far-off-resonance) conversion, valid for any flux ratio:
/// J = J1 sn^2[kappa_n z; sqrt(J1/J2)] with the intensity-independent linear
/// mismatch coefficient. Reduces to eta0 tanh^2(kappa_n z) when matched with
/// equal inputs and to the sinc^2 law when strongly mismatched.
pub fn conventional(
    z: f64,
    params: &MediumParams,
    boundary: &BoundaryFields,
) -> Result<(f64, Vec<Warning>)> {
    let mut warnings = Vec::new();
    let om_max = rabi(params.mu1, boundary.eta10)?
        .max(rabi(params.mu2, boundary.eta20)?)
        .max(rabi(params.mu3, boundary.eta30)?);
    if params.delta2.abs().min(params.delta3.abs()) < GUARD_FACTOR * om_max {
        warnings.push(Warning::new(
            "conventional-regime detunings not large against the Rabi frequencies".to_string(),
        ));
    }
    if params.delta2 == 0.0 || params.delta3 == 0.0 {
        return Err(Error::DivisionByZero {
            what: "conventional regime with a zero detuning",
        });
    }
    let (d2, d3, q, n) = (params.delta2, params.delta3, params.q(), params.n_density);
    let a1 = q * d2 * d3 + params.mu1 * d3 - params.mu3 * d2;
    let mmm = params.mu1 * params.mu2 * params.mu3;
    let b1 = a1 * a1 / (4.0 * mmm);
    let s = boundary.eta10 + boundary.eta20 + b1;
    let disc = (s * s - 4.0 * boundary.eta10 * boundary.eta20).max(0.0);
    let j2 = 0.5 * (s + disc.sqrt());
    let j1 = 0.5 * (s - disc.sqrt());
    let kap_n = 0.5 * n * (mmm * j2).sqrt() / (d2 * d3).abs();
    let p = (j1 / j2).sqrt().min(1.0);
    let sn = specfun::jacobi_sn(kap_n * z, p)?;
    Ok((j1 * sn * sn, warnings))
}

/// A parameter value returned by [compensation_tuning].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TunedParameter {
    Delta2(f64),
    Delta3(f64),
    /// Density-normalized residual mismatch q = -2 dk / N.
    Q(f64),
}

/// The parameter value that zeroes the regime's total mismatch (or its
/// linear mismatch coefficient), together with the residual of that
/// coefficient evaluated at the tuned point.
pub fn compensation_tuning(
    tag: RegimeTag,
    params: &MediumParams,
    boundary: &BoundaryFields,
) -> Result<(TunedParameter, f64)> {
    let n = params.n_density;
    match tag {
        RegimeTag::EitUndepleted | RegimeTag::EitDepleted => {
            // delta2 = (2/N)(mu2 eta20 / mu3) dk zeroes both dk' and the
            // linear coefficient -q mu2 eta20 - mu3 delta2
            let d2 = 2.0 / n * (params.mu2 * boundary.eta20 / params.mu3) * params.delta_k;
            let residual = -params.q() * params.mu2 * boundary.eta20 - params.mu3 * d2;
            Ok((TunedParameter::Delta2(d2), residual))
        }
        RegimeTag::MaxCohUndepleted => {
            // solve dk - (N/4)(sqrt(mu1/eta10) + (mu2 - mu3)/delta3) = 0
            let root_term = (params.mu1 / boundary.eta10).sqrt();
            let denom = 4.0 * params.delta_k / n - root_term;
            if denom == 0.0 {
                return Err(Error::NoSolution {
                    detail: "mismatch already cancelled by the 1-2 refraction term; delta3 unconstrained"
                        .into(),
                });
            }
            let d3 = (params.mu2 - params.mu3) / denom;
            let residual = params.delta_k - 0.25 * n * (root_term + (params.mu2 - params.mu3) / d3);
            Ok((TunedParameter::Delta3(d3), residual))
        }
        RegimeTag::MaxCohDepleted => {
            if params.mu2 >= params.mu3 {
                return Err(Error::NoSolution {
                    detail: format!(
                        "tuning condition needs mu2 < mu3, got mu2 = {}, mu3 = {}",
                        params.mu2, params.mu3
                    ),
                });
            }
            let eta0 = boundary.eta10;
            if (boundary.eta20 - eta0).abs() > 1e-9 * eta0 {
                return Err(Error::ConditionViolated {
                    residual: (boundary.eta20 - eta0).abs(),
                });
            }
            let d3 = (params.mu3 * eta0 * (params.mu3 - params.mu2) / params.mu1).sqrt();
            // residual of the linear mismatch coefficient at the asymptotic
            // eigenvalue Omega10 * zeta
            let zeta = (params.mu3 / (params.mu3 - params.mu2)).sqrt();
            let lam = (params.mu1 * eta0).sqrt() * zeta;
            let residual = params.mu1 * d3 + params.mu2 * lam - params.mu3 * lam;
            Ok((TunedParameter::Delta3(d3), residual))
        }
        RegimeTag::Conventional => {
            if params.delta2 == 0.0 || params.delta3 == 0.0 {
                return Err(Error::NoSolution {
                    detail: "conventional tuning needs nonzero detunings".into(),
                });
            }
            let q = params.mu3 / params.delta3 - params.mu1 / params.delta2;
            let residual = q * params.delta2 * params.delta3 + params.mu1 * params.delta3
                - params.mu3 * params.delta2;
            Ok((TunedParameter::Q(q), residual))
        }
    }
}

/// Instantaneous fractional conversion efficiency
/// epsilon = J_max / min(eta10, eta20).
pub fn fractional_efficiency(j_max: f64, eta10: f64, eta20: f64) -> Result<f64> {
    let floor = eta10.min(eta20);
    if floor <= 0.0 {
        return Err(Error::DivisionByZero {
            what: "fractional efficiency with a vanishing entrance flux",
        });
    }
    Ok(j_max / floor)
}

/// Total energy conversion efficiency at one coordinate:
///
/// ```text
/// W = int dtau w3 eta3(z, tau) / int dtau [w1 eta1(0, tau) + w2 eta2(0, tau)]
/// ```
///
/// by trapezoidal quadrature over a common retarded-time grid. The
/// denominator is taken at the entrance; by the flux conservation laws the
/// total beam power is z-independent, so this is the converted fraction of
/// the input power.
pub fn total_efficiency(
    tau: &[f64],
    eta3_at_z: &[f64],
    eta1_in: &[f64],
    eta2_in: &[f64],
    omega1: f64,
    omega2: f64,
    omega3: f64,
) -> Result<f64> {
    if tau.len() != eta3_at_z.len() || tau.len() != eta1_in.len() || tau.len() != eta2_in.len() {
        return Err(Error::GridMismatch {
            detail: format!(
                "tau/eta grids differ: {} vs {}/{}/{}",
                tau.len(),
                eta3_at_z.len(),
                eta1_in.len(),
                eta2_in.len()
            ),
        });
    }
    if tau.len() < 2 {
        return Err(Error::GridMismatch {
            detail: "total efficiency needs at least 2 time samples".into(),
        });
    }
    let res = (omega1 + omega2 - omega3).abs();
    if res > 1e-12 * omega3.abs() {
        return Err(Error::ResonanceViolation { residual: res });
    }
    let trapz = |f: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = 0.0;
        for i in 0..tau.len() - 1 {
            acc += 0.5 * (tau[i + 1] - tau[i]) * (f(i) + f(i + 1));
        }
        acc
    };
    let num = trapz(&|i| omega3 * eta3_at_z[i]);
    let den = trapz(&|i| omega1 * eta1_in[i] + omega2 * eta2_in[i]);
    if den <= 0.0 {
        return Err(Error::DivisionByZero {
            what: "total efficiency with zero input power",
        });
    }
    Ok(num / den)
}

/// Photons converted per participating atom for the regime at its optimum
/// length: the figure of merit ranking the three mechanisms.
pub fn figure_of_merit(
    tag: RegimeTag,
    tau_pulse: f64,
    omega10: f64,
    omega20: f64,
    delta2: f64,
    delta3: f64,
) -> f64 {
    match tag {
        RegimeTag::EitUndepleted | RegimeTag::EitDepleted => tau_pulse * omega10,
        RegimeTag::MaxCohUndepleted | RegimeTag::MaxCohDepleted => {
            tau_pulse * omega20 * (omega20 / delta3)
        }
        RegimeTag::Conventional => tau_pulse * omega20 * (omega10 * omega20 / (delta3 * delta2)),
    }
}

/// Closed-form entrance eigenvalue in the far-detuned (large delta3) limit:
/// the root of the reduced two-level problem including the ac Stark shift of
/// the omega2 field,
///
/// ```text
/// lambda = -(delta2 - Omega20^2/delta3)/2
///          + sqrt((delta2 - Omega20^2/delta3)^2/4 + Omega10^2).
/// ```
///
/// Used as the branch target for prepared-superposition entrances; accurate
/// to O(Omega^2/delta3^2) against the full characteristic cubic.
pub fn maxcoh_eigenvalue_estimate(params: &MediumParams, boundary: &BoundaryFields) -> Result<f64> {
    let om10 = rabi(params.mu1, boundary.eta10)?;
    let om20 = rabi(params.mu2, boundary.eta20)?;
    if params.delta3 == 0.0 {
        return Err(Error::DivisionByZero {
            what: "far-detuned eigenvalue with delta3 = 0",
        });
    }
    let shifted = params.delta2 - om20 * om20 / params.delta3;
    Ok(-0.5 * shifted + (0.25 * shifted * shifted + om10 * om10).sqrt())
}

/// Entrance amplitudes (c1, c2) of the adiabatic superposition in the
/// far-detuned regime, c1 = Omega10/sqrt(lambda^2 + Omega10^2) and
/// c2 = -lambda/sqrt(lambda^2 + Omega10^2); the excited amplitude is
/// parametrically small. At the tuned depleted point (lambda = Omega10 zeta)
/// this is the superposition (|1> - zeta |2>)/sqrt(1 + zeta^2).
pub fn maxcoh_entrance_amplitudes(omega10: f64, lambda: f64) -> (f64, f64) {
    let n = (lambda * lambda + omega10 * omega10).sqrt();
    (omega10 / n, -lambda / n)
}

/// Adiabaticity / decay-validity report for a pulse of duration tau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// Pulse-duration bound from residual spontaneous decay of the followed
    /// state; infinite for gamma = 0.
    pub tau0: f64,
    /// tau / tau0 (must be << 1 for the decay-free treatment).
    pub ratio: f64,
    /// Minimum eigenvalue gap at the entrance times tau; >> 1 means
    /// adiabatic following holds.
    pub gap_tau: f64,
}

/// Decay bound tau0 and the generic adiabaticity indicator gap * tau.
///
/// The decay bound is (Omega20^2/Omega10^2)/gamma for the EIT tags and
/// (delta3^2/Omega20^2)/gamma for the far-detuned tags (for which the
/// excited-state admixture scales as Omega^2/delta3^2).
pub fn adiabatic_validity(
    tag: RegimeTag,
    params: &MediumParams,
    boundary: &BoundaryFields,
    tau_pulse: f64,
) -> Result<ValidityReport> {
    let om1 = rabi(params.mu1, boundary.eta10)?;
    let om2 = rabi(params.mu2, boundary.eta20)?;
    let tau0 = if params.gamma == 0.0 {
        f64::INFINITY
    } else {
        match tag {
            RegimeTag::EitUndepleted | RegimeTag::EitDepleted => {
                (om2 * om2) / (om1 * om1) / params.gamma
            }
            _ => (params.delta3 * params.delta3) / (om2 * om2) / params.gamma,
        }
    };
    // minimum eigenvalue separation at the entrance
    let poly = crate::hamiltonian::CharPoly::new(params, boundary);
    let roots = specfun::solve_cubic_real(poly.entrance_cubic(boundary.phi0 + params.theta))?;
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            gap = gap.min((roots[i] - roots[j]).abs());
        }
    }
    if roots.len() < 2 {
        gap = f64::INFINITY;
    }
    Ok(ValidityReport {
        tau0,
        ratio: tau_pulse / tau0,
        gap_tau: gap * tau_pulse,
    })
}
