//! Independent numerical ground truth: canonical (J, phi) integration, full
//! Maxwell-Bloch space-time integration, and quadrature oracles for the
//! special functions.
//!
//! Nothing here evaluates the closed-form elliptic solution; agreement
//! between these integrators and the analytic path is the product's central
//! cross-validation.

pub mod canonical;
pub mod mb;
pub mod quadrature;

pub use canonical::{integrate_canonical, CanonicalTrajectory};
pub use mb::{integrate_mb, MbInit, MbSolution};
pub use quadrature::{adaptive_quadrature, quadrature_elliptic, quadrature_elliptic_e};

use crate::error::{Error, Result};

/// Adaptive integrator settings.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum step as a fraction of the natural conversion length 1/kappa.
    pub max_step_frac: f64,
    pub method: RkMethod,
    /// Vacuum seed for the canonical oracle, relative to min(eta10, eta20);
    /// 0 starts exactly at the vacuum fixed point (the regular-chart
    /// integrator supports it).
    pub seed_eps: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step_frac: 0.01,
            method: RkMethod::DormandPrince54,
            seed_eps: 1e-12,
        }
    }
}

impl IntegratorConfig {
    pub fn check(&self) -> Result<()> {
        // the negated form also rejects NaN tolerances
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                field: "tolerance",
                reason: "tolerances must be > 0",
                value: self.rel_tol.min(self.abs_tol),
            });
        }
        Ok(())
    }
}

/// Embedded Runge-Kutta family member (order >= 5).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkMethod {
    DormandPrince54,
}

/// Sample grid for the space-time (Maxwell-Bloch) integration.
#[derive(Debug, Clone)]
pub struct SpaceTimeGrid {
    pub z: Vec<f64>,
    pub tau: Vec<f64>,
}

impl SpaceTimeGrid {
    pub fn uniform(
        z_max: f64,
        n_z: usize,
        tau_min: f64,
        tau_max: f64,
        n_tau: usize,
    ) -> Result<Self> {
        let grid = SpaceTimeGrid {
            z: linspace(0.0, z_max, n_z),
            tau: linspace(tau_min, tau_max, n_tau),
        };
        grid.check()?;
        Ok(grid)
    }

    pub fn check(&self) -> Result<()> {
        for (name, axis) in [("z", &self.z), ("tau", &self.tau)] {
            if axis.len() < 2 {
                return Err(Error::GridMismatch {
                    detail: format!("{name} axis needs at least 2 points, got {}", axis.len()),
                });
            }
            if axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::GridMismatch {
                    detail: format!("{name} axis must be strictly increasing"),
                });
            }
        }
        Ok(())
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

// ---------------------------------------------------------------------------
// Shared embedded Dormand-Prince 5(4) stepper over fixed-size state
// ---------------------------------------------------------------------------

pub(crate) struct Dp54Outcome<const D: usize> {
    pub y: [f64; D],
}

/// Integrate dy/dt = rhs(t, y) from t0 to t1 with adaptive step control.
/// `rhs` may fail (e.g. an eigenvalue branch is lost); failures abort.
pub(crate) fn dp54_integrate<const D: usize>(
    mut rhs: impl FnMut(f64, &[f64; D]) -> Result<[f64; D]>,
    y0: [f64; D],
    t0: f64,
    t1: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_step: f64,
) -> Result<Dp54Outcome<D>> {
    // Butcher tableau (Dormand & Prince 1980).
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    // 4th-order embedded weights
    const E1: f64 = 71.0 / 57600.0;
    const E3: f64 = -71.0 / 16695.0;
    const E4: f64 = 71.0 / 1920.0;
    const E5: f64 = -17253.0 / 339200.0;
    const E6: f64 = 22.0 / 525.0;
    const E7: f64 = -1.0 / 40.0;

    let span = t1 - t0;
    if span == 0.0 {
        return Ok(Dp54Outcome { y: y0 });
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = (span.abs() / 100.0).min(max_step).max(1e-14 * span.abs());
    let floor = span.abs() * 1e-14;
    let mut k1 = rhs(t, &y)?;

    let axpy = |y: &[f64; D], h: f64, terms: &[(&[f64; D], f64)]| -> [f64; D] {
        let mut out = *y;
        for (v, c) in terms {
            for i in 0..D {
                out[i] += h * c * v[i];
            }
        }
        out
    };

    while (t1 - t) * dir > 0.0 {
        if h < floor {
            return Err(Error::StiffnessFailure {
                z: t,
                step: h,
                floor,
            });
        }
        let mut hh = h.min((t1 - t).abs()) * dir;
        // don't leave a sliver behind
        if ((t1 - t) - hh).abs() < 0.25 * h {
            hh = t1 - t;
        }
        let k2 = rhs(t + 0.2 * hh, &axpy(&y, hh, &[(&k1, A21)]))?;
        let k3 = rhs(t + 0.3 * hh, &axpy(&y, hh, &[(&k1, A31), (&k2, A32)]))?;
        let k4 = rhs(
            t + 0.8 * hh,
            &axpy(&y, hh, &[(&k1, A41), (&k2, A42), (&k3, A43)]),
        )?;
        let k5 = rhs(
            t + 8.0 / 9.0 * hh,
            &axpy(&y, hh, &[(&k1, A51), (&k2, A52), (&k3, A53), (&k4, A54)]),
        )?;
        let k6 = rhs(
            t + hh,
            &axpy(
                &y,
                hh,
                &[(&k1, A61), (&k2, A62), (&k3, A63), (&k4, A64), (&k5, A65)],
            ),
        )?;
        let ynew = axpy(
            &y,
            hh,
            &[(&k1, B1), (&k3, B3), (&k4, B4), (&k5, B5), (&k6, B6)],
        );
        let k7 = rhs(t + hh, &ynew)?;
        // error estimate
        let mut err = 0.0f64;
        for i in 0..D {
            let e =
                hh * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = abs_tol + rel_tol * y[i].abs().max(ynew[i].abs());
            err += (e / sc) * (e / sc);
        }
        err = (err / D as f64).sqrt();
        if err <= 1.0 {
            t += hh;
            y = ynew;
            k1 = k7; // FSAL
            if !y.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite { what: "dp54 state" });
            }
        }
        let fac = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * fac).min(max_step);
    }
    Ok(Dp54Outcome { y })
}
