//! Domain types and unit conventions.
//!
//! All angular frequencies, rates and detunings share one arbitrary frequency
//! unit; lengths share one arbitrary length unit. Couplings `mu_j` carry
//! frequency^2 per unit photon flux so that the Rabi frequency
//! `Omega = sqrt(mu * eta)` is consistent. The library never converts units;
//! a convenient normalization is gamma = 1 or delta3 = 1.

// `!(x > 0.0)`-style guards are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::error::{Error, Result, Warning};

/// Atomic-medium constants.
///
/// The density `n_density` enters the propagation only through the products
/// N*z and q = -2*delta_k/N. `delta_k` is the residual background phase
/// mismatch k1 + k2 - k3 from transitions outside the three-level system.
/// `theta` is the phase of the 2-3 dipole moment; it is absorbed into the
/// relative phase once at initialization and held constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    pub n_density: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub gamma: f64,
    pub delta_k: f64,
    pub theta: f64,
}

impl MediumParams {
    /// q = -2*delta_k / N, the density-normalized residual mismatch.
    pub fn q(&self) -> f64 {
        -2.0 * self.delta_k / self.n_density
    }
}

/// Normalized temporal envelope f(tau) in [0, 1], sampled on a caller-supplied
/// retarded-time grid with linear interpolation between samples. Outside the
/// grid the envelope continues with its end values.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    taus: Vec<f64>,
    values: Vec<f64>,
}

impl Envelope {
    /// Constant envelope f = 1.
    pub fn flat() -> Self {
        Envelope {
            taus: vec![0.0],
            values: vec![1.0],
        }
    }

    pub fn from_samples(taus: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if taus.len() != values.len() || taus.is_empty() {
            return Err(Error::GridMismatch {
                detail: format!(
                    "envelope needs equal-length non-empty grids, got {} taus and {} values",
                    taus.len(),
                    values.len()
                ),
            });
        }
        if taus.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::GridMismatch {
                detail: "envelope tau grid must be strictly increasing".into(),
            });
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter {
                field: "envelope",
                reason: "samples must be finite and non-negative",
                value: f64::NAN,
            });
        }
        Ok(Envelope { taus, values })
    }

    /// Gaussian exp(-4 ln2 (tau-center)^2 / fwhm^2) sampled on `taus`.
    pub fn gaussian(fwhm: f64, center: f64, taus: Vec<f64>) -> Result<Self> {
        let values = taus
            .iter()
            .map(|&t| (-4.0 * std::f64::consts::LN_2 * (t - center).powi(2) / (fwhm * fwhm)).exp())
            .collect();
        Self::from_samples(taus, values)
    }

    /// Hyperbolic secant sech((tau-center)/width) sampled on `taus`.
    pub fn sech(width: f64, center: f64, taus: Vec<f64>) -> Result<Self> {
        let values = taus
            .iter()
            .map(|&t| 1.0 / ((t - center) / width).cosh())
            .collect();
        Self::from_samples(taus, values)
    }

    /// C1 smoothstep ramp from 0 at `start` to 1 at `start + width`, then flat.
    pub fn smoothstep_on(start: f64, width: f64, taus: Vec<f64>) -> Result<Self> {
        let values = taus
            .iter()
            .map(|&t| {
                let s = ((t - start) / width).clamp(0.0, 1.0);
                s * s * (3.0 - 2.0 * s)
            })
            .collect();
        Self::from_samples(taus, values)
    }

    /// Linear interpolation at `tau`, clamped to the grid ends.
    pub fn eval(&self, tau: f64) -> f64 {
        let n = self.taus.len();
        if n == 1 || tau <= self.taus[0] {
            return self.values[0];
        }
        if tau >= self.taus[n - 1] {
            return self.values[n - 1];
        }
        let i = match self.taus.binary_search_by(|t| t.partial_cmp(&tau).unwrap()) {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let (t0, t1) = (self.taus[i - 1], self.taus[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        v0 + (v1 - v0) * (tau - t0) / (t1 - t0)
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }
}

/// Entrance boundary conditions: photon fluxes, relative phase and the pump
/// temporal envelopes.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFields {
    pub eta10: f64,
    pub eta20: f64,
    pub eta30: f64,
    /// Relative phase phi(z=0) of the three waves (the dipole phase theta is
    /// added on top of this by the solvers).
    pub phi0: f64,
    pub envelope1: Envelope,
    pub envelope2: Envelope,
}

impl BoundaryFields {
    /// Flat-envelope boundary with the given entrance fluxes.
    pub fn cw(eta10: f64, eta20: f64, eta30: f64) -> Self {
        BoundaryFields {
            eta10,
            eta20,
            eta30,
            phi0: 0.0,
            envelope1: Envelope::flat(),
            envelope2: Envelope::flat(),
        }
    }

    /// Boundary fluxes at retarded time `tau` (pump envelopes applied).
    pub fn fluxes_at_tau(&self, tau: f64) -> (f64, f64, f64) {
        (
            self.eta10 * self.envelope1.eval(tau),
            self.eta20 * self.envelope2.eval(tau),
            self.eta30,
        )
    }
}

/// A far-detuned transition outside the three-level system contributing to
/// the background refractive index of mode `mode`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundTransition {
    /// Which wave (1, 2 or 3) this transition dresses.
    pub mode: u8,
    pub coupling: f64,
    pub detuning: f64,
}

/// Validate a parameter set, returning it unchanged together with any regime
/// warnings. Errors name the offending field.
pub fn validate(
    params: MediumParams,
    boundary: BoundaryFields,
) -> Result<(MediumParams, BoundaryFields, Vec<Warning>)> {
    for (field, value) in [
        ("mu1", params.mu1),
        ("mu2", params.mu2),
        ("mu3", params.mu3),
    ] {
        if !(value > 0.0) {
            return Err(Error::NonPositiveCoupling { field, value });
        }
    }
    if !(params.n_density > 0.0) {
        return Err(Error::InvalidParameter {
            field: "n_density",
            reason: "must be > 0",
            value: params.n_density,
        });
    }
    if !(params.gamma >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "gamma",
            reason: "must be >= 0",
            value: params.gamma,
        });
    }
    for (field, value) in [
        ("eta10", boundary.eta10),
        ("eta20", boundary.eta20),
        ("eta30", boundary.eta30),
    ] {
        if !(value >= 0.0) {
            return Err(Error::NegativeFlux { field, value });
        }
    }

    let mut warnings = Vec::new();
    if params.mu1 > 0.2 * params.mu2 {
        warnings.push(Warning::new(format!(
            "coupling hierarchy mu1 << mu2 not satisfied: mu1/mu2 = {:.3}",
            params.mu1 / params.mu2
        )));
    }
    let omega2 = rabi(params.mu2, boundary.eta20).unwrap_or(0.0);
    if params.gamma > 0.0 && omega2 > 0.0 && params.gamma > 0.5 * omega2 {
        warnings.push(Warning::new(format!(
            "decay gamma = {} is not small against Omega2 = {omega2:.4}; losses will be significant",
            params.gamma
        )));
    }
    for (name, env) in [
        ("envelope1", &boundary.envelope1),
        ("envelope2", &boundary.envelope2),
    ] {
        let peak = env.peak();
        if (peak - 1.0).abs() > 1e-9 {
            warnings.push(Warning::new(format!(
                "{name} peak is {peak}, expected normalization to 1"
            )));
        }
    }
    Ok((params, boundary, warnings))
}

/// Rabi frequency Omega = sqrt(mu * eta).
pub fn rabi(mu: f64, eta: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::NonPositiveCoupling {
            field: "mu",
            value: mu,
        });
    }
    if !(eta >= 0.0) {
        return Err(Error::NegativeFlux {
            field: "eta",
            value: eta,
        });
    }
    Ok((mu * eta).sqrt())
}

/// Residual background phase mismatch delta_k = k1 + k2 - k3 with
/// k_j = n_j w_j / c and n_j = 1 + N (c/w_j) sum_m mu_jm / delta_jm.
///
/// The vacuum parts cancel through the multiphoton resonance condition
/// w3 = w1 + w2, which is enforced to relative tolerance 1e-12. `c` is the
/// speed of light in the chosen unit system (1.0 in normalized units).
pub fn residual_mismatch(
    transitions: &[BackgroundTransition],
    omega1: f64,
    omega2: f64,
    omega3: f64,
    n_density: f64,
    c: f64,
) -> Result<f64> {
    let residual = (omega1 + omega2 - omega3).abs();
    if residual > 1e-12 * omega3.abs() {
        return Err(Error::ResonanceViolation { residual });
    }
    let mut sums = [0.0f64; 3];
    for t in transitions {
        if !(1..=3).contains(&t.mode) {
            return Err(Error::InvalidParameter {
                field: "mode",
                reason: "background transition mode must be 1, 2 or 3",
                value: t.mode as f64,
            });
        }
        if t.detuning == 0.0 {
            return Err(Error::InvalidParameter {
                field: "detuning",
                reason: "background detuning must be nonzero",
                value: t.detuning,
            });
        }
        sums[(t.mode - 1) as usize] += t.coupling / t.detuning;
    }
    // k_j = w_j/c + N * sum_m mu_jm/delta_jm; the w/c parts cancel exactly at
    // resonance, any enforced sub-1e-12 residual is carried through honestly.
    Ok((omega1 + omega2 - omega3) / c + n_density * (sums[0] + sums[1] - sums[2]))
}
