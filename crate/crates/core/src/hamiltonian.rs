//! Adiabatic solution of the reduced wave-propagation problem.
//!
//! After adiabatic elimination of the atoms, propagation of the three photon
//! fluxes reduces to canonical equations for the exchanged flux J and the
//! relative phase phi, governed by the characteristic function of the
//! three-level interaction Hamiltonian written as
//!
//! ```text
//! G(lambda, J) = g(J) cos(phi),
//! g(J) = -2 sqrt(mu1 mu2 mu3 (eta10 - J)(eta20 - J)(eta30 + J)),
//! ```
//!
//! with `lambda` the conserved (entrance) eigenvalue and `lambda + qJ` the
//! local eigenvalue of the interaction Hamiltonian. For generation from
//! vacuum (eta30 = 0) the polynomial expansions of G and dG/dlambda in J give
//! closed-form oscillation roots and an implicit elliptic-integral solution
//! z(J), inverted here to J(z) and extended periodically across turning
//! points.

use crate::error::{Error, Result, Warning};
use crate::model::{BoundaryFields, MediumParams};
use crate::specfun::{self, CubicCoeffs};
use num_complex::Complex64;

/// The characteristic-function machinery for one (medium, boundary) pair.
#[derive(Debug, Clone, Copy)]
pub struct CharPoly {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub q: f64,
    pub eta10: f64,
    pub eta20: f64,
    pub eta30: f64,
}

impl CharPoly {
    pub fn new(params: &MediumParams, boundary: &BoundaryFields) -> Self {
        CharPoly {
            mu1: params.mu1,
            mu2: params.mu2,
            mu3: params.mu3,
            delta2: params.delta2,
            delta3: params.delta3,
            q: params.q(),
            eta10: boundary.eta10,
            eta20: boundary.eta20,
            eta30: boundary.eta30,
        }
    }

    pub fn mmm(&self) -> f64 {
        self.mu1 * self.mu2 * self.mu3
    }

    fn flux_sum(&self, j: f64) -> f64 {
        self.mu1 * (self.eta10 - j) + self.mu2 * (self.eta20 - j) + self.mu3 * (self.eta30 + j)
    }

    /// g(J) <= 0.
    pub fn g(&self, j: f64) -> f64 {
        let p = (self.eta10 - j).max(0.0) * (self.eta20 - j).max(0.0) * (self.eta30 + j).max(0.0);
        -2.0 * (self.mmm() * p).sqrt()
    }

    /// Smooth factor g~ with g = g~ * sqrt(eta30 + J).
    pub fn g_tilde(&self, j: f64) -> f64 {
        let p = (self.eta10 - j).max(0.0) * (self.eta20 - j).max(0.0);
        -2.0 * (self.mmm() * p).sqrt()
    }

    /// d(g~)/dJ.
    pub fn g_tilde_prime(&self, j: f64) -> f64 {
        let a = self.eta10 - j;
        let b = self.eta20 - j;
        self.mmm().sqrt() * (a + b) / (a * b).max(1e-300).sqrt()
    }

    /// G(lambda, J).
    pub fn g_char(&self, lambda: f64, j: f64) -> f64 {
        let l0 = lambda + self.q * j;
        l0 * (self.delta2 + l0) * (self.delta3 + l0)
            - self.flux_sum(j) * l0
            - self.mu1 * (self.eta10 - j) * self.delta3
            - self.mu3 * (self.eta30 + j) * self.delta2
    }

    /// dG/dlambda at fixed J.
    pub fn dg_dlam(&self, lambda: f64, j: f64) -> f64 {
        let l0 = lambda + self.q * j;
        3.0 * l0 * l0 + 2.0 * l0 * (self.delta2 + self.delta3) + self.delta2 * self.delta3
            - self.flux_sum(j)
    }

    /// dG/dJ at fixed lambda.
    pub fn dg_dj(&self, lambda: f64, j: f64) -> f64 {
        let l0 = lambda + self.q * j;
        self.q
            * ((self.delta2 + l0) * (self.delta3 + l0)
                + l0 * (self.delta3 + l0)
                + l0 * (self.delta2 + l0))
            + (self.mu1 + self.mu2 - self.mu3) * l0
            - self.flux_sum(j) * self.q
            + self.mu1 * self.delta3
            - self.mu3 * self.delta2
    }

    /// Coefficients of the entrance characteristic cubic
    /// G(lambda, 0) - g(0) cos(phi_total) = 0.
    pub fn entrance_cubic(&self, phi_total: f64) -> CubicCoeffs {
        let s0 = self.flux_sum(0.0);
        let rhs = self.g(0.0) * phi_total.cos();
        CubicCoeffs::new(
            1.0,
            self.delta2 + self.delta3,
            self.delta2 * self.delta3 - s0,
            -self.mu1 * self.eta10 * self.delta3 - self.mu3 * self.eta30 * self.delta2 - rhs,
        )
    }

    /// Natural eigenvalue scale used for degeneracy checks.
    pub fn lambda_scale(&self) -> f64 {
        self.delta2
            .abs()
            .max(self.delta3.abs())
            .max(self.flux_sum(0.0).abs().sqrt())
            .max(1e-30)
    }
}

/// How to pick the adiabatic eigenvalue branch at the entrance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// Track the branch connected to the bare ground state by a homotopy in
    /// the overall field amplitude (geometric ramp, Newton polish per step).
    GroundConnected,
    /// Pick the real root nearest to a caller-supplied value. Used for
    /// prepared-superposition entrances where the ground-connected branch is
    /// not the physical one.
    NearestTo(f64),
}

/// Entrance eigenvalue lambda: the real root of
/// G0(lambda) = g(0) cos(phi(0)) on the requested branch.
///
/// `phi_total` is the entrance relative phase including the dipole phase
/// theta. Errors with `BranchAmbiguity` when the selected root is within
/// 1e-10 of another (relative to the natural eigenvalue scale).
pub fn entrance_eigenvalue(poly: &CharPoly, phi_total: f64, branch: Branch) -> Result<f64> {
    let scale = poly.lambda_scale();
    let lambda = match branch {
        Branch::NearestTo(target) => {
            let roots = specfun::solve_cubic_real(poly.entrance_cubic(phi_total))?;
            if roots.is_empty() {
                return Err(Error::NoSolution {
                    detail: "characteristic cubic has no real roots".into(),
                });
            }
            *roots
                .iter()
                .min_by(|a, b| {
                    (*a - target)
                        .abs()
                        .partial_cmp(&(*b - target).abs())
                        .unwrap()
                })
                .unwrap()
        }
        Branch::GroundConnected => {
            // Scale all fluxes by s^2 (Rabi frequencies by s) and walk s up
            // geometrically; the bare ground state sits at lambda = 0.
            let mut lam = 0.0f64;
            let steps = 20;
            for k in 0..=steps {
                let s2 = 1e-12f64.powf(1.0 - k as f64 / steps as f64);
                let scaled = CharPoly {
                    eta10: poly.eta10 * s2,
                    eta20: poly.eta20 * s2,
                    eta30: poly.eta30 * s2,
                    ..*poly
                };
                let cubic = scaled.entrance_cubic(phi_total);
                for _ in 0..60 {
                    let f = cubic.eval(lam);
                    let df = cubic.eval_deriv(lam);
                    if df == 0.0 {
                        break;
                    }
                    let step = f / df;
                    lam -= step;
                    if step.abs() <= 1e-15 * (1.0 + lam.abs()) {
                        break;
                    }
                }
            }
            lam
        }
    };
    // Degeneracy check against the other roots of the full cubic.
    let roots = specfun::solve_cubic_real(poly.entrance_cubic(phi_total))?;
    let mut near = f64::INFINITY;
    let mut seen_self = false;
    for r in &roots {
        let d = (r - lambda).abs();
        if !seen_self && d <= 1e-8 * scale {
            seen_self = true;
            continue;
        }
        near = near.min(d);
    }
    if near < 1e-10 * scale {
        return Err(Error::BranchAmbiguity { gap: near });
    }
    Ok(lambda)
}

/// Polynomial expansion coefficients of G and dG/dlambda in powers of J,
/// valid for generation from vacuum (eta30 = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    /// (A1, A2, A3): G(lambda, J) - G(lambda, 0) = A1 J + A2 J^2 + A3 J^3.
    pub a_upper: [f64; 3],
    /// (a0, a1, a2): dG/dlambda = a0 + a1 J + a2 J^2.
    pub a_lower: [f64; 3],
    pub q: f64,
}

/// Closed-form expansion coefficients at the entrance eigenvalue.
///
/// Requires eta30 = 0 (the expansion is derived for generation from vacuum).
pub fn mismatch_coefficients(poly: &CharPoly, lambda: f64) -> Result<Coefficients> {
    if poly.eta30 != 0.0 {
        return Err(Error::InvalidParameter {
            field: "eta30",
            reason: "expansion coefficients require generation from vacuum (eta30 = 0)",
            value: poly.eta30,
        });
    }
    let (d2, d3, q) = (poly.delta2, poly.delta3, poly.q);
    let (mu1, mu2, mu3) = (poly.mu1, poly.mu2, poly.mu3);
    let (e1, e2) = (poly.eta10, poly.eta20);
    let l = lambda;

    let a1 = q * ((l + d2) * (l + d3) + l * (l + d2) + l * (l + d3) - mu1 * e1 - mu2 * e2)
        + mu1 * (l + d3)
        + mu2 * l
        - mu3 * (l + d2);
    let a2 = q * q * (3.0 * l + d2 + d3) + q * (mu1 + mu2 - mu3);
    let a3 = q * q * q;
    let b0 = 3.0 * l * l + 2.0 * l * (d2 + d3) + d2 * d3 - mu1 * e1 - mu2 * e2;
    let b1 = 2.0 * q * (3.0 * l + d2 + d3) + (mu1 + mu2 - mu3);
    let b2 = 3.0 * q * q;
    Ok(Coefficients {
        a_upper: [a1, a2, a3],
        a_lower: [b0, b1, b2],
        q,
    })
}

/// Degree-8 polynomial coefficients (ascending powers of J) of
/// g^2(J) - G^2(J) = 4 mu1 mu2 mu3 J (eta10-J)(eta20-J)
///                   - (A1 + A2 J + A3 J^2)^2 J^2.
pub fn exchange_polynomial(poly: &CharPoly, coeffs: &Coefficients) -> [f64; 9] {
    let m = 4.0 * poly.mmm();
    let (e1, e2) = (poly.eta10, poly.eta20);
    let [a1, a2, a3] = coeffs.a_upper;
    let mut c = [0.0f64; 9];
    // 4 mmm (e1 e2 J - (e1+e2) J^2 + J^3)
    c[1] += m * e1 * e2;
    c[2] -= m * (e1 + e2);
    c[3] += m;
    // -(A1 + A2 J + A3 J^2)^2 J^2
    c[2] -= a1 * a1;
    c[3] -= 2.0 * a1 * a2;
    c[4] -= a2 * a2 + 2.0 * a1 * a3;
    c[5] -= 2.0 * a2 * a3;
    c[6] -= a3 * a3;
    c
}

/// Horner evaluation of an ascending-coefficient polynomial.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Oscillation roots (J1, J2) of the exchange polynomial with the quadratic
/// and higher mismatch terms dropped, and B1 = A1^2 / (4 mu1 mu2 mu3).
///
/// A guard compares the dropped |A2 J1 + A3 J1^2| against |A1| at the 1%
/// level and returns a warning above it (the closed-form roots are then only
/// the leading-order ones).
pub fn oscillation_roots(
    poly: &CharPoly,
    coeffs: &Coefficients,
) -> Result<(f64, f64, f64, Vec<Warning>)> {
    let [a1, a2, a3] = coeffs.a_upper;
    let b1 = a1 * a1 / (4.0 * poly.mmm());
    let s = poly.eta10 + poly.eta20 + b1;
    let disc = s * s - 4.0 * poly.eta10 * poly.eta20;
    if disc < 0.0 {
        // (eta10+eta20+B1)^2 >= 4 eta10 eta20 holds for B1 >= 0, so this is
        // unreachable for real A1; kept as an explicit error for callers
        // constructing solutions from parts.
        return Err(Error::NoOscillationRegime { discriminant: disc });
    }
    let root = disc.sqrt();
    let j2 = 0.5 * (s + root);
    let j1 = 0.5 * (s - root);
    let mut warnings = Vec::new();
    let dropped = (a2 * j1 + a3 * j1 * j1).abs();
    if dropped > 0.01 * a1.abs().max(1e-300) {
        warnings.push(Warning::new(format!(
            "quadratic mismatch terms not negligible: |A2 J1 + A3 J1^2| = {dropped:.3e} vs |A1| = {:.3e}",
            a1.abs()
        )));
    }
    Ok((j1, j2, b1, warnings))
}

/// Conversion coefficient kappa = (N/2) sqrt(mu1 mu2 mu3 J2) / |a0|.
///
/// The sign of a0 is carried separately (`sign0` in [AdiabaticSolution]) so
/// that kappa is positive by convention.
pub fn conversion_coefficient(poly: &CharPoly, n_density: f64, j2: f64, a0: f64) -> Result<f64> {
    let scale = poly.flux_sum(0.0).max(poly.lambda_scale().powi(2));
    if a0.abs() <= 1e-14 * scale {
        return Err(Error::VanishingA0 { value: a0 });
    }
    Ok(0.5 * n_density * (poly.mmm() * j2).sqrt() / a0.abs())
}

/// Fully assembled analytic solution for one retarded-time slice.
#[derive(Debug, Clone)]
pub struct AdiabaticSolution {
    pub lambda: f64,
    pub coeffs: Coefficients,
    pub j1: f64,
    pub j2: f64,
    pub b1: f64,
    /// Elliptic modulus p = sqrt(J1/J2).
    pub modulus: f64,
    pub kappa: f64,
    /// Sign of sin(phi) on the initially growing branch: -sign(a0).
    pub sign0: f64,
    /// Integration constant of the third-kind form of z(J); infinite in the
    /// degenerate (monotone) limit where that form is indeterminate.
    pub chi0: f64,
    /// Quarter period z(J1); infinite when the motion is monotone.
    pub z_quarter: f64,
    /// Monotone soliton-like branch (J1 = J2 within 1e-8).
    pub degenerate: bool,
    pub n_density: f64,
    pub poly: CharPoly,
    pub warnings: Vec<Warning>,
}

/// Threshold on 1 - p below which the motion is treated as monotone.
const DEGENERATE_MODULUS_EPS: f64 = 1e-8;

impl AdiabaticSolution {
    /// Assemble the solution from medium and boundary data on the given
    /// eigenvalue branch. Requires eta30 = 0.
    pub fn solve(params: &MediumParams, boundary: &BoundaryFields, branch: Branch) -> Result<Self> {
        let poly = CharPoly::new(params, boundary);
        let lambda = entrance_eigenvalue(&poly, boundary.phi0 + params.theta, branch)?;
        let coeffs = mismatch_coefficients(&poly, lambda)?;
        Self::from_parts(params.n_density, poly, lambda, coeffs)
    }

    /// Assemble from an externally supplied eigenvalue and coefficient set
    /// (used for regime-asymptotic comparisons).
    pub fn from_parts(
        n_density: f64,
        poly: CharPoly,
        lambda: f64,
        coeffs: Coefficients,
    ) -> Result<Self> {
        let (j1, j2, b1, warnings) = oscillation_roots(&poly, &coeffs)?;
        let a0 = coeffs.a_lower[0];
        let a1 = coeffs.a_lower[1];
        let kappa = conversion_coefficient(&poly, n_density, j2, a0)?;
        // Monotonicity of z(J) needs a0 + a1 J single-signed on [0, J1].
        if (a0 + a1 * j1) * a0 <= 0.0 {
            return Err(Error::BranchAmbiguity {
                gap: (a0 + a1 * j1).abs(),
            });
        }
        let modulus = (j1 / j2).sqrt().min(1.0);
        let degenerate = 1.0 - modulus < DEGENERATE_MODULUS_EPS;
        let mut sol = AdiabaticSolution {
            lambda,
            coeffs,
            j1,
            j2,
            b1,
            modulus,
            kappa,
            sign0: -a0.signum(),
            chi0: f64::INFINITY,
            z_quarter: f64::INFINITY,
            degenerate,
            n_density,
            poly,
            warnings,
        };
        if !degenerate {
            sol.z_quarter = implicit_distance(sol.j1, &sol)?;
            let r = a1 * j2 / a0;
            let p = sol.modulus;
            let f2 = specfun::ellip_f(std::f64::consts::FRAC_PI_2, p)?;
            let pi2 = specfun::ellip_pi(std::f64::consts::FRAC_PI_2, p * p, p)?;
            sol.chi0 = -r * (-f2 + (1.0 - j1 / j2) * pi2);
        }
        Ok(sol)
    }

    /// Local eigenvalue of the interaction Hamiltonian at exchanged flux J.
    pub fn local_eigenvalue(&self, j: f64) -> f64 {
        self.lambda + self.coeffs.q * j
    }

    /// Period of the exchanged flux: 2 z(J1) when the motion oscillates
    /// (both turning points are simple), infinite when monotone.
    pub fn period(&self) -> f64 {
        2.0 * self.z_quarter
    }
}

/// Distance z >= 0 at which the exchanged flux first reaches `j`, on the
/// first quarter period. Monotone in J on [0, J1].
///
/// Evaluated through first- and second-kind integrals,
///
/// ```text
/// kappa z = | F(g1, p) + (a1 J2 / a0) (F(g1, p) - E(g1, p)) |,
/// g1 = arcsin sqrt(J/J1),  p = sqrt(J1/J2),
/// ```
///
/// which is regular for every p in [0, 1]; the third-kind form (see
/// [implicit_distance_pi_form]) is the same function of J up to the
/// integration constant chi0.
pub fn implicit_distance(j: f64, sol: &AdiabaticSolution) -> Result<f64> {
    if !(0.0..=sol.j1 * (1.0 + 1e-12)).contains(&j) {
        return Err(Error::DomainError {
            what: "implicit_distance",
            detail: format!("J = {j} outside [0, J1 = {}]", sol.j1),
        });
    }
    let jc = j.min(sol.j1);
    let p = sol.modulus;
    let g1 = (jc / sol.j1).sqrt().min(1.0).asin();
    let f = specfun::ellip_f(g1, p)?;
    let e = specfun::ellip_e(g1, p)?;
    let a0 = sol.coeffs.a_lower[0];
    let a1 = sol.coeffs.a_lower[1];
    let denom = 0.5 * sol.n_density * (sol.poly.mmm() * sol.j2).sqrt();
    Ok((a0 * f + a1 * sol.j2 * (f - e)).abs() / denom)
}

/// The same distance through the incomplete third-kind integral:
///
/// ```text
/// kappa z = F(g1, p) + (a1 J2/a0) { -F(g2, p) + (1 - J1/J2) Pi(g2, p^2, p) } + chi0,
/// g2 = arcsin sqrt( J2 (J1 - J) / (J1 (J2 - J)) ),
/// ```
///
/// with chi0 fixed by z(0) = 0. Kept as an independent evaluation route for
/// cross-checking; indeterminate in the degenerate limit p -> 1.
pub fn implicit_distance_pi_form(j: f64, sol: &AdiabaticSolution) -> Result<f64> {
    if sol.degenerate {
        return Err(Error::DomainError {
            what: "implicit_distance_pi_form",
            detail: "third-kind form is indeterminate at p = 1".into(),
        });
    }
    if !(0.0..=sol.j1 * (1.0 + 1e-12)).contains(&j) {
        return Err(Error::DomainError {
            what: "implicit_distance_pi_form",
            detail: format!("J = {j} outside [0, J1 = {}]", sol.j1),
        });
    }
    let jc = j.min(sol.j1);
    let p = sol.modulus;
    let (j1, j2) = (sol.j1, sol.j2);
    let g1 = (jc / j1).sqrt().min(1.0).asin();
    let s2 = (j2 * (j1 - jc) / (j1 * (j2 - jc))).clamp(0.0, 1.0);
    let g2 = s2.sqrt().asin();
    let r = sol.coeffs.a_lower[1] * j2 / sol.coeffs.a_lower[0];
    let f1 = specfun::ellip_f(g1, p)?;
    let f2 = specfun::ellip_f(g2, p)?;
    let pi2 = specfun::ellip_pi(g2, p * p, p)?;
    Ok((f1 + r * (-f2 + (1.0 - j1 / j2) * pi2) + sol.chi0) / sol.kappa)
}

/// State of the exchange variable at one z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeState {
    pub z: f64,
    pub j: f64,
    pub phi: f64,
    /// Whether J is on a growing stretch of its cycle.
    pub ascending: bool,
}

/// Invert the implicit solution: exchanged flux and phase at distance z.
///
/// On the oscillatory branch the first quarter period is inverted by
/// bisection (z(J) is monotone there) and extended by the turning-point
/// symmetry of the pendulum motion, J even about each turning point with
/// period 2 z(J1). On the degenerate branch (J1 = J2) the motion is
/// monotone and J(z) -> J1 from below.
pub fn exchange_at(z: f64, sol: &AdiabaticSolution) -> Result<ExchangeState> {
    if z < 0.0 {
        return Err(Error::DomainError {
            what: "exchange_at",
            detail: format!("z = {z} must be >= 0"),
        });
    }
    if z == 0.0 {
        return Ok(ExchangeState {
            z,
            j: 0.0,
            phi: phase_at(z, 0.0, true, sol),
            ascending: true,
        });
    }
    let (target, ascending) = if sol.degenerate {
        (z, true)
    } else {
        let period = sol.period();
        let mut zz = z % period;
        let ascending = zz <= sol.z_quarter;
        if !ascending {
            zz = period - zz;
        }
        (zz, ascending)
    };
    let j = invert_distance(target, sol)?;
    Ok(ExchangeState {
        z,
        j,
        phi: phase_at(z, j, ascending, sol),
        ascending,
    })
}

fn invert_distance(z_target: f64, sol: &AdiabaticSolution) -> Result<f64> {
    // Bisection on u = sqrt(J/J1), where z(u) is monotone increasing. The
    // degenerate branch has z -> inf as u -> 1, so a bracket always exists.
    let zof = |u: f64| -> Result<f64> { implicit_distance(sol.j1 * u * u, sol) };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    if !sol.degenerate && z_target >= sol.z_quarter {
        return Ok(sol.j1);
    }
    if sol.degenerate {
        // shrink the upper bracket away from the logarithmic endpoint
        hi = 1.0 - 1e-16;
        if zof(hi)? <= z_target {
            return Ok(sol.j1 * hi * hi);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if zof(mid)? < z_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 {
            break;
        }
    }
    Ok(sol.j1 * (0.5 * (lo + hi)).powi(2))
}

/// Fluxes at distance z: eta1 = eta10 - J, eta2 = eta20 - J, eta3 = eta30 + J.
pub fn fluxes_at(
    z: f64,
    sol: &AdiabaticSolution,
    boundary: &BoundaryFields,
) -> Result<(f64, f64, f64)> {
    let state = exchange_at(z, sol)?;
    Ok(fluxes_from_exchange(state.j, boundary))
}

pub fn fluxes_from_exchange(j: f64, boundary: &BoundaryFields) -> (f64, f64, f64) {
    (boundary.eta10 - j, boundary.eta20 - j, boundary.eta30 + j)
}

/// Relative phase phi at (z, J) from cos(phi) = G/g with the sign of
/// sin(phi) set by the pendulum branch: `sign0` while J grows, flipped on
/// the descending stretch. Endpoints are taken by continuity; at exact
/// turning points with vanishing mismatch the phase is +-pi/2.
pub fn phase_at(_z: f64, j: f64, ascending: bool, sol: &AdiabaticSolution) -> f64 {
    let [a1, a2, a3] = sol.coeffs.a_upper;
    let num = ((a3 * j + a2) * j + a1) * j;
    let den = sol.poly.g(j);
    let cos_phi = if j <= 0.0 || den == 0.0 {
        // continuity limit: G ~ A1 J, g ~ -2 sqrt(mmm eta10 eta20 J)
        0.0
    } else {
        (num / den).clamp(-1.0, 1.0)
    };
    let sin_sign = if ascending { sol.sign0 } else { -sol.sign0 };
    let sin_phi = sin_sign * (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
    sin_phi.atan2(cos_phi)
}

/// Normalized eigenvector of the three-level interaction Hamiltonian
///
/// ```text
///         |    0      -W1      W3       |
/// H/hbar =|   -W1     -d2      W2 e^{i phi} |
///         |    W3   W2 e^{-i phi}  -d3  |
/// ```
///
/// for the eigenvalue branch nearest `lambda_branch`. The global phase is
/// fixed by making the first component of largest modulus real positive,
/// which keeps the state continuous along a trajectory. Errors with
/// `BranchAmbiguity` at eigenvalue degeneracies.
pub fn atomic_state(
    omega1: f64,
    omega2: f64,
    omega3: f64,
    phi: f64,
    delta2: f64,
    delta3: f64,
    lambda_branch: f64,
) -> Result<[Complex64; 3]> {
    let e = |x: f64| Complex64::new(x, 0.0);
    let w2p = Complex64::from_polar(omega2, phi);
    let h = [
        [e(0.0), e(-omega1), e(omega3)],
        [e(-omega1), e(-delta2), w2p],
        [e(omega3), w2p.conj(), e(-delta3)],
    ];
    let (_, v) = hermitian3_nearest(&h, lambda_branch)?;
    Ok(v)
}

/// Eigenvalue nearest `target` and its normalized eigenvector for a 3x3
/// Hermitian matrix (only the upper triangle plus real diagonal is trusted).
///
/// The eigenvector is the best-conditioned cross product of two rows of
/// (H - lam); the global phase makes the largest-modulus component real
/// positive, which keeps states continuous along parameter paths.
pub(crate) fn hermitian3_nearest(
    h: &[[Complex64; 3]; 3],
    target: f64,
) -> Result<(f64, [Complex64; 3])> {
    let norm_scale = h
        .iter()
        .flatten()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1e-300);
    // characteristic cubic det(H - lam) = 0 written as a monic real cubic
    let tr = h[0][0].re + h[1][1].re + h[2][2].re;
    let m01 = h[0][0].re * h[1][1].re - h[0][1].norm_sqr();
    let m02 = h[0][0].re * h[2][2].re - h[0][2].norm_sqr();
    let m12 = h[1][1].re * h[2][2].re - h[1][2].norm_sqr();
    let det = h[0][0].re * m12
        - (h[0][1] * (h[0][1].conj() * h[2][2].re - h[1][2] * h[0][2].conj())).re
        + (h[0][2] * (h[0][1].conj() * h[1][2].conj() - h[1][1].re * h[0][2].conj())).re;
    let cubic = CubicCoeffs::new(1.0, -tr, m01 + m02 + m12, -det);
    let roots = specfun::solve_cubic_real(cubic)?;
    if roots.is_empty() {
        return Err(Error::NoSolution {
            detail: "Hermitian characteristic cubic returned no real roots".into(),
        });
    }
    let lam = *roots
        .iter()
        .min_by(|a, b| {
            (*a - target)
                .abs()
                .partial_cmp(&(*b - target).abs())
                .unwrap()
        })
        .unwrap();
    let gap = roots
        .iter()
        .filter(|r| (**r - lam).abs() > 0.0)
        .map(|r| (r - lam).abs())
        .fold(f64::INFINITY, f64::min);
    if gap < 1e-10 * norm_scale {
        return Err(Error::BranchAmbiguity { gap });
    }

    let le = Complex64::new(lam, 0.0);
    let rows = [
        [h[0][0] - le, h[0][1], h[0][2]],
        [h[0][1].conj(), h[1][1] - le, h[1][2]],
        [h[0][2].conj(), h[1][2].conj(), h[2][2] - le],
    ];
    // Null vector of (H - lam): plain cross products of row pairs; take the
    // best-conditioned one.
    let cross = |a: &[Complex64; 3], b: &[Complex64; 3]| -> [Complex64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let candidates = [
        cross(&rows[0], &rows[1]),
        cross(&rows[1], &rows[2]),
        cross(&rows[0], &rows[2]),
    ];
    let norm2 = |v: &[Complex64; 3]| v.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let mut v = candidates[0];
    let mut best = norm2(&v);
    for c in &candidates[1..] {
        let n = norm2(c);
        if n > best {
            best = n;
            v = *c;
        }
    }
    if best <= 0.0 {
        return Err(Error::NoSolution {
            detail: "eigenvector cross products all vanish".into(),
        });
    }
    let n = best.sqrt();
    for c in v.iter_mut() {
        *c /= n;
    }
    let k = (0..3)
        .max_by(|&i, &j| v[i].norm().partial_cmp(&v[j].norm()).unwrap())
        .unwrap();
    let ph = v[k] / v[k].norm();
    for c in v.iter_mut() {
        *c /= ph;
    }
    Ok((lam, v))
}
