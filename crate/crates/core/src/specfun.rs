//! Special functions and algebraic solvers used by the analytic solution:
//! incomplete elliptic integrals of the first, second and third kind, the
//! Jacobi elliptic sine, a real-root cubic solver and the inverse hyperbolic
//! tangent.
//!
//! Elliptic integrals follow the trigonometric (Legendre) convention with
//! modulus `p` (parameter m = p^2):
//!
//! ```text
//! F(g, p)    = int_0^g dt / sqrt(1 - p^2 sin^2 t)
//! E(g, p)    = int_0^g sqrt(1 - p^2 sin^2 t) dt
//! Pi(g, r, p)= int_0^g dt / ((1 - r sin^2 t) sqrt(1 - p^2 sin^2 t))
//! ```
//!
//! Evaluation goes through the Carlson symmetric forms RF, RC, RD, RJ
//! (Carlson 1995; Numerical Recipes 3rd ed., ch. 6.12), which stay accurate
//! uniformly in the modulus including p -> 1.

use crate::error::{Error, Result};

/// Amplitude/modulus/characteristic triple for the incomplete integrals.
///
/// `amplitude` in [0, pi/2], `modulus` in [0, 1]; `characteristic` is the
/// third-kind parameter r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub amplitude: f64,
    pub modulus: f64,
    pub characteristic: f64,
}

impl EllipticParams {
    pub fn check(&self) -> Result<()> {
        check_amplitude(self.amplitude)?;
        check_modulus(self.modulus)?;
        let s = self.amplitude.sin();
        if self.characteristic * s * s >= 1.0 {
            return Err(Error::SingularCharacteristic {
                value: self.characteristic * s * s,
            });
        }
        Ok(())
    }
}

fn check_amplitude(gamma: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&gamma) {
        return Err(Error::DomainError {
            what: "elliptic amplitude",
            detail: format!("amplitude {gamma} outside [0, pi/2]"),
        });
    }
    Ok(())
}

fn check_modulus(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError {
            what: "elliptic modulus",
            detail: format!("modulus {p} outside [0, 1]"),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Carlson symmetric forms
// ---------------------------------------------------------------------------

/// Carlson RF(x, y, z). Arguments non-negative, at most one zero.
pub(crate) fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0025;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut ave;
    let (mut dx, mut dy, mut dz);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let alamb = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        ave = (xt + yt + zt) / 3.0;
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) <= ERRTOL {
            break;
        }
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / ave.sqrt()
}

/// Carlson degenerate RC(x, y), y > 0 assumed here.
pub(crate) fn carlson_rc(x: f64, y: f64) -> f64 {
    const ERRTOL: f64 = 0.0012;
    let (mut xt, mut yt) = (x, y);
    let mut ave;
    let mut s;
    loop {
        let alamb = 2.0 * (xt * yt).sqrt() + yt;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        ave = (xt + yt + yt) / 3.0;
        s = (yt - ave) / ave;
        if s.abs() <= ERRTOL {
            break;
        }
    }
    (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / ave.sqrt()
}

/// Carlson RD(x, y, z) = RJ(x, y, z, z).
pub(crate) fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let mut ave;
    let (mut dx, mut dy, mut dz);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let alamb = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + alamb));
        fac *= 0.25;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        ave = 0.2 * (xt + yt + 3.0 * zt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) <= ERRTOL {
            break;
        }
    }
    let ea = dx * dy;
    let eb = dz * dz;
    let ec = ea - eb;
    let ed = ea - 6.0 * eb;
    let ee = ed + ec + ec;
    3.0 * sum
        + fac
            * (1.0
                + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea)))
            / (ave * ave.sqrt())
}

/// Carlson RJ(x, y, z, w) for w > 0 (the only case needed here).
pub(crate) fn carlson_rj(x: f64, y: f64, z: f64, w: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    let (mut xt, mut yt, mut zt, mut pt) = (x, y, z, w);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let mut ave;
    let (mut dx, mut dy, mut dz, mut dp);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let alamb = sx * (sy + sz) + sy * sz;
        let alpha = (pt * (sx + sy + sz) + sx * sy * sz).powi(2);
        let beta = pt * (pt + alamb).powi(2);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        xt = 0.25 * (xt + alamb);
        yt = 0.25 * (yt + alamb);
        zt = 0.25 * (zt + alamb);
        pt = 0.25 * (pt + alamb);
        ave = 0.2 * (xt + yt + zt + 2.0 * pt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        dp = (ave - pt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()).max(dp.abs()) <= ERRTOL {
            break;
        }
    }
    let ea = dx * (dy + dz) + dy * dz;
    let eb = dx * dy * dz;
    let ec = dp * dp;
    let ed = ea - 3.0 * ec;
    let ee = eb + 2.0 * dp * (ea - ec);
    3.0 * sum
        + fac
            * (1.0
                + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * ee)
                + eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0))
                + dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0)
                - 1.0 / 3.0 * dp * ec)
            / (ave * ave.sqrt())
}

// ---------------------------------------------------------------------------
// Legendre-form integrals
// ---------------------------------------------------------------------------

/// Incomplete elliptic integral of the first kind F(gamma, p).
///
/// Returns `+inf` for the complete integral at p = 1.
pub fn ellip_f(amplitude: f64, modulus: f64) -> Result<f64> {
    check_amplitude(amplitude)?;
    check_modulus(modulus)?;
    if amplitude == 0.0 {
        return Ok(0.0);
    }
    let s = amplitude.sin();
    let c = amplitude.cos();
    let q = (1.0 - s * modulus) * (1.0 + s * modulus);
    if q <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(s * carlson_rf(c * c, q, 1.0))
}

/// Incomplete elliptic integral of the second kind E(gamma, p).
pub fn ellip_e(amplitude: f64, modulus: f64) -> Result<f64> {
    check_amplitude(amplitude)?;
    check_modulus(modulus)?;
    if amplitude == 0.0 {
        return Ok(0.0);
    }
    let s = amplitude.sin();
    let c = amplitude.cos();
    let sk = s * modulus;
    let q = (1.0 - sk) * (1.0 + sk);
    if q <= 0.0 {
        // E(pi/2, 1) = 1
        return Ok(1.0);
    }
    Ok(s * (carlson_rf(c * c, q, 1.0) - sk * sk * carlson_rd(c * c, q, 1.0) / 3.0))
}

/// Incomplete elliptic integral of the third kind Pi(gamma, r, p) with the
/// characteristic entering as `1 - r sin^2 t` in the integrand.
pub fn ellip_pi(amplitude: f64, characteristic: f64, modulus: f64) -> Result<f64> {
    check_amplitude(amplitude)?;
    check_modulus(modulus)?;
    if amplitude == 0.0 {
        return Ok(0.0);
    }
    let s = amplitude.sin();
    let rs2 = characteristic * s * s;
    if rs2 >= 1.0 {
        return Err(Error::SingularCharacteristic { value: rs2 });
    }
    let c = amplitude.cos();
    let sk = s * modulus;
    let q = (1.0 - sk) * (1.0 + sk);
    if q <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(s * (carlson_rf(c * c, q, 1.0)
        + characteristic * s * s / 3.0 * carlson_rj(c * c, q, 1.0, 1.0 - rs2)))
}

/// Complete elliptic integral of the first kind K(p).
pub fn ellip_k(modulus: f64) -> Result<f64> {
    ellip_f(std::f64::consts::FRAC_PI_2, modulus)
}

// ---------------------------------------------------------------------------
// Jacobi elliptic sine
// ---------------------------------------------------------------------------

/// Jacobi elliptic sine sn(u; p), valid for all real `u`, modulus p in [0, 1].
///
/// Computed by the descending-AGM amplitude recursion (Abramowitz & Stegun
/// 16.4). Near the degenerate modulus, 1 - p^2 < 1e-8, the evaluation
/// switches to the hyperbolic expansion A&S 16.15.1 whose truncation error
/// is O((1-p^2)^2) there; naive AGM loses the amplitude phase for large u in
/// that range.
pub fn jacobi_sn(u: f64, modulus: f64) -> Result<f64> {
    check_modulus(modulus)?;
    let m = modulus * modulus;
    if m == 0.0 {
        return Ok(u.sin());
    }
    let m1 = 1.0 - m;
    if m1 < 1e-8 {
        if m1 == 0.0 {
            return Ok(u.tanh());
        }
        let t = u.tanh();
        let sech2 = 1.0 - t * t;
        return Ok(t + 0.25 * m1 * (u.sinh() * u.cosh() - u) * sech2);
    }
    // AGM scale: a_{n+1} = (a_n+b_n)/2, b_{n+1} = sqrt(a_n b_n)
    let mut a = vec![1.0f64];
    let mut c = vec![modulus]; // c_0 = p so that b_0 = sqrt(1-m) pairs with a_0 = 1
    let mut b = m1.sqrt();
    let mut n = 0usize;
    while c[n].abs() > f64::EPSILON * a[n] && n < 64 {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        a.push(an);
        c.push(cn);
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for k in (1..=n).rev() {
        let s = (c[k] / a[k] * phi.sin()).asin();
        phi = 0.5 * (phi + s);
    }
    Ok(phi.sin())
}

/// Inverse hyperbolic tangent; errors outside (-1, 1).
pub fn arth(x: f64) -> Result<f64> {
    if x.abs() >= 1.0 {
        return Err(Error::DomainError {
            what: "arth",
            detail: format!("|{x}| >= 1"),
        });
    }
    Ok(x.atanh())
}

// ---------------------------------------------------------------------------
// Real-root cubic solver
// ---------------------------------------------------------------------------

/// Real coefficients of c3 x^3 + c2 x^2 + c1 x + c0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoeffs {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicCoeffs {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        CubicCoeffs { c3, c2, c1, c0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    fn scale(&self) -> f64 {
        self.c3
            .abs()
            .max(self.c2.abs())
            .max(self.c1.abs())
            .max(self.c0.abs())
            .max(1e-300)
    }
}

/// All real roots of a cubic (degenerate degrees routed to the quadratic and
/// linear solvers), sorted ascending, repeated with multiplicity.
///
/// Each root is polished with Newton steps on the original polynomial; the
/// residual satisfies |poly(root)| <= 1e-10 * coefficient scale for
/// well-conditioned inputs.
pub fn solve_cubic_real(coeffs: CubicCoeffs) -> Result<Vec<f64>> {
    let CubicCoeffs { c3, c2, c1, c0 } = coeffs;
    if !(c3.is_finite() && c2.is_finite() && c1.is_finite() && c0.is_finite()) {
        return Err(Error::DomainError {
            what: "solve_cubic_real",
            detail: "non-finite coefficient".into(),
        });
    }
    let scale = coeffs.scale();
    // Leading coefficient negligible relative to the rest: lower degree.
    if c3.abs() <= 1e-14 * scale {
        return Ok(solve_quadratic_real(c2, c1, c0));
    }

    // Depressed cubic t^3 + pt + q with x = t - c2/(3 c3).
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = c + a * (2.0 * a * a - 9.0 * b) / 27.0;
    let disc = -(4.0 * p * p * p + 27.0 * q * q);

    let mut roots: Vec<f64> = if disc > 0.0 {
        // three distinct real roots: trigonometric form
        let rho = (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p * rho)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| {
                2.0 * rho * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift
            })
            .collect()
    } else if disc == 0.0 || (p == 0.0 && q == 0.0) {
        if p == 0.0 {
            vec![-shift; 3]
        } else {
            // double root and a simple one
            let double = -1.5 * q / p;
            let simple = 3.0 * q / p;
            vec![simple - shift, double - shift, double - shift]
        }
    } else {
        // one real root: Cardano with a stable cube-root branch
        let half_q = 0.5 * q;
        let sq = (half_q * half_q + p * p * p / 27.0).sqrt();
        let u = (-half_q - half_q.signum() * sq).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        vec![u + v - shift]
    };

    // Newton polish on the original polynomial.
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let f = coeffs.eval(*r);
            let df = coeffs.eval_deriv(*r);
            if df != 0.0 {
                let step = f / df;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(roots)
}

fn solve_quadratic_real(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs()).max(1e-300);
    if a.abs() <= 1e-14 * scale {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a); 2];
    }
    let t = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if b == 0.0 {
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (t / a, c / t)
    };
    let mut v = vec![r1, r2];
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}
