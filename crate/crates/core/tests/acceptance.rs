//! Acceptance suite: every release criterion, each printed as one
//! PASS/FAIL line with the measured numbers (run with `--nocapture` to see
//! the lines for passing tests).
//!
//! Reference scenario throughout: coupling ratios mu2/mu3 = 0.5,
//! mu1/mu3 = 0.05 in normalized units (N = 1, mu3 = 1).

use triwave::hamiltonian::{
    atomic_state, entrance_eigenvalue, exchange_at, implicit_distance, mismatch_coefficients,
    AdiabaticSolution, Branch, CharPoly, Coefficients,
};
use triwave::model::{BoundaryFields, Envelope, MediumParams};
use triwave::oracle::{
    integrate_canonical, integrate_mb, linspace, quadrature_elliptic, IntegratorConfig, MbInit,
    SpaceTimeGrid,
};
use triwave::parallel::ExecMode;
use triwave::regimes::{
    self, conventional, eit_depleted, eit_mismatch, maxcoh_depleted, RegimeTag,
};
use triwave::specfun::{ellip_f, ellip_pi, jacobi_sn};
use triwave::tolerances as tol;

fn reference_params() -> MediumParams {
    MediumParams {
        n_density: 1.0,
        mu1: 0.05,
        mu2: 0.5,
        mu3: 1.0,
        delta2: 0.0,
        delta3: 0.0,
        gamma: 0.0,
        delta_k: 0.0,
        theta: 0.0,
    }
}

fn check(criterion: &str, pass: bool, detail: String) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_01_dark_state_phase_matching() {
    // EIT settings with q = 0, delta2 = delta3 = 0: all mismatch expansion
    // coefficients vanish identically.
    let p = reference_params();
    let b = BoundaryFields::cw(1e-3, 1.0, 0.0);
    let poly = CharPoly::new(&p, &b);
    let lam = entrance_eigenvalue(&poly, 0.0, Branch::GroundConnected).unwrap();
    let c = mismatch_coefficients(&poly, lam).unwrap();
    let scale = p.mu2 * b.eta20;
    let worst = c.a_upper.iter().map(|a| a.abs()).fold(0.0f64, f64::max);
    check(
        "01 dark-state phase matching",
        lam.abs() <= tol::DARK_STATE_MATCHING_REL * scale
            && worst <= tol::DARK_STATE_MATCHING_REL * scale,
        format!("lambda = {lam:.3e}, max |A_m| = {worst:.3e} vs scale {scale}"),
    );
}

#[test]
fn criterion_02_depleted_conversion_three_solver_agreement() {
    // Equal flat inputs, matched: the closed-form inverse-tanh curve, the
    // general elliptic inversion and the canonical integrator agree pairwise;
    // J is monotone and reaches 0.99 eta0.
    let p = reference_params();
    let eta0 = 1.0;
    let b = BoundaryFields::cw(eta0, eta0, 0.0);
    let sol = AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
    let zs = linspace(0.0, 36.0, 241);
    // the comparison budget is 1e-6; run the oracle well below it so its own
    // truncation error does not consume the budget
    let cfg = IntegratorConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        max_step_frac: 0.005,
        ..Default::default()
    };
    let ode = integrate_canonical(&p, &b, &zs, &cfg, Branch::GroundConnected).unwrap();
    // the integrator starts from the documented vacuum seed; align the
    // analytic curves by the (tiny) seed offset z(J = seed)
    let z_seed = implicit_distance(cfg.seed_eps * eta0, &sol).unwrap();

    let mut max_cg = 0.0f64; // closed form vs general inversion
    let mut max_co = 0.0f64; // closed form vs canonical integrator
    let mut max_go = 0.0f64; // general inversion vs canonical integrator
    let mut monotone = true;
    let mut prev = -1.0;
    for (i, &z) in zs.iter().enumerate() {
        let j_closed = eit_depleted(z, &p, eta0).unwrap();
        let j_general = exchange_at(z, &sol).unwrap().j;
        let j_closed_off = eit_depleted(z + z_seed, &p, eta0).unwrap();
        let j_general_off = exchange_at(z + z_seed, &sol).unwrap().j;
        let j_ode = ode.j[i];
        max_cg = max_cg.max((j_closed - j_general).abs() / eta0);
        max_co = max_co.max((j_closed_off - j_ode).abs() / eta0);
        max_go = max_go.max((j_general_off - j_ode).abs() / eta0);
        if j_general < prev {
            monotone = false;
        }
        prev = j_general;
    }
    let j_end = exchange_at(zs[zs.len() - 1], &sol).unwrap().j;
    check(
        "02 depleted-conversion solver agreement",
        max_cg <= tol::TRI_SOLVER_AGREEMENT_REL
            && max_co <= tol::TRI_SOLVER_AGREEMENT_REL
            && max_go <= tol::TRI_SOLVER_AGREEMENT_REL
            && monotone
            && j_end >= tol::DEPLETED_CONVERSION_TARGET * eta0,
        format!(
            "pairwise deviations (closed/general {max_cg:.2e}, closed/ode {max_co:.2e}, general/ode {max_go:.2e}), monotone = {monotone}, J(end) = {j_end:.4}"
        ),
    );
}

#[test]
fn criterion_02_population_evolution() {
    // Bare-state populations along the matched depleted trajectory evolve
    // from ~|1> toward |2>.
    let p = reference_params();
    let b = BoundaryFields::cw(1.0, 1.0, 0.0);
    let sol = AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
    let zs = linspace(0.0, 36.0, 121);
    let mut pop1_start = 0.0;
    let mut pop2_end = 0.0;
    for (i, &z) in zs.iter().enumerate() {
        let st = exchange_at(z, &sol).unwrap();
        let om1 = (p.mu1 * (b.eta10 - st.j)).sqrt();
        let om2 = (p.mu2 * (b.eta20 - st.j)).sqrt();
        let om3 = (p.mu3 * st.j).sqrt();
        let v = atomic_state(om1, om2, om3, st.phi, 0.0, 0.0, sol.local_eigenvalue(st.j)).unwrap();
        if i == 0 {
            pop1_start = v[0].norm_sqr();
        }
        if i == zs.len() - 1 {
            pop2_end = v[1].norm_sqr();
        }
    }
    check(
        "02 population evolution |1> -> |2>",
        pop1_start > 0.9 && pop2_end > 0.98,
        format!("pop1(0) = {pop1_start:.4}, pop2(end) = {pop2_end:.4}"),
    );
}

#[test]
fn criterion_02_excited_population_bound() {
    // |c3|^2 <= 1e-2 along the trajectory. At these coupling ratios the
    // chain dark state carries |c3|^2 = mu1(eta0-J) / [(mu1+mu2)(eta0-J) +
    // mu3 J], which peaks at mu1/(mu1+mu2) = 1/11 at the entrance, so the
    // 1e-2 bound cannot hold there; it is asserted as stated and the
    // measured value is reported.
    let p = reference_params();
    let b = BoundaryFields::cw(1.0, 1.0, 0.0);
    let sol = AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
    let zs = linspace(0.0, 36.0, 121);
    let mut pop3_max = 0.0f64;
    for &z in &zs {
        let st = exchange_at(z, &sol).unwrap();
        let om1 = (p.mu1 * (b.eta10 - st.j)).sqrt();
        let om2 = (p.mu2 * (b.eta20 - st.j)).sqrt();
        let om3 = (p.mu3 * st.j).sqrt();
        let v = atomic_state(om1, om2, om3, st.phi, 0.0, 0.0, sol.local_eigenvalue(st.j)).unwrap();
        pop3_max = pop3_max.max(v[2].norm_sqr());
    }
    check(
        "02 excited-population bound",
        pop3_max <= tol::EXCITED_POPULATION_BOUND,
        format!(
            "max |c3|^2 = {pop3_max:.4} vs bound {}; dark-state floor mu1/(mu1+mu2) = {:.4} at these couplings",
            tol::EXCITED_POPULATION_BOUND,
            p.mu1 / (p.mu1 + p.mu2)
        ),
    );
}

#[test]
fn criterion_03_mismatched_oscillation() {
    // dk'/(2 kappa_e) = 0.06: oscillation amplitude 0.94 eta0 and the
    // period of the sn^2 curve against the logarithmic estimate.
    let p = reference_params();
    let eta0 = 1.0;
    let kap_e = 0.5 * (p.mu1 * p.mu3 / (p.mu2 * eta0)).sqrt();
    let dkp = 2.0 * kap_e * 0.06;
    // amplitude at the quarter period of the sn^2 argument
    let e: f64 = 0.06;
    let p_mod = ((1.0 - e) / (1.0 + e)).sqrt();
    let quarter = triwave::specfun::ellip_k(p_mod).unwrap() / (kap_e * (1.0 + e).sqrt());
    let (j_peak, z_est) = eit_mismatch(quarter, &p, eta0, dkp).unwrap();
    // measured period: first minimum of the curve located by scanning
    let mut z_min = 0.0;
    let mut prev2 = 0.0;
    let mut prev = 0.0;
    let n = 40_000;
    for k in 0..n {
        let z = 3.0 * quarter * k as f64 / (n - 1) as f64;
        let (j, _) = eit_mismatch(z, &p, eta0, dkp).unwrap();
        if k >= 2 && prev < j && prev < prev2 {
            z_min = 3.0 * quarter * (k - 1) as f64 / (n - 1) as f64;
            break;
        }
        prev2 = prev;
        prev = j;
    }
    let amp_ok = (j_peak - 0.94 * eta0).abs() <= tol::MISMATCH_AMPLITUDE_ABS;
    let period_ok = (z_min - z_est).abs() <= tol::PERIOD_ESTIMATE_REL * z_est;
    check(
        "03 mismatched oscillation",
        amp_ok && period_ok,
        format!(
            "amplitude {j_peak:.8} vs 0.94, measured period {z_min:.3} vs estimate {z_est:.3} ({:.1}%)",
            100.0 * (z_min - z_est).abs() / z_est
        ),
    );
}

#[test]
fn criterion_04_maxcoh_depleted_reproduction() {
    // Tuned far-detuned depleted conversion: closed form vs the general
    // machinery on the same asymptotic coefficient set, and the entrance
    // superposition against (|1> - zeta|2>)/sqrt(1+zeta^2) with zeta = sqrt(2).
    let mut p = reference_params();
    let eta0 = 1.0;
    p.delta3 = (p.mu3 * eta0 * (p.mu3 - p.mu2) / p.mu1).sqrt();
    let b = BoundaryFields::cw(eta0, eta0, 0.0);
    let zeta = (p.mu3 / (p.mu3 - p.mu2)).sqrt();
    let om10 = (p.mu1 * eta0).sqrt();
    let lam = om10 * zeta;
    let coeffs = Coefficients {
        a_upper: [p.mu1 * p.delta3 + (p.mu2 - p.mu3) * lam, 0.0, 0.0],
        a_lower: [
            2.0 * lam * p.delta3 - (p.mu1 + p.mu2) * eta0,
            p.mu1 + p.mu2 - p.mu3,
            0.0,
        ],
        q: 0.0,
    };
    let sol =
        AdiabaticSolution::from_parts(p.n_density, CharPoly::new(&p, &b), lam, coeffs).unwrap();
    let rate = 0.5 * (p.mu1 * p.mu2 / (p.mu3 * eta0)).sqrt();
    let zs = linspace(0.0, 8.0 / rate, 161);
    let mut max_dev = 0.0f64;
    let mut monotone = true;
    let mut prev = -1.0;
    for &z in &zs {
        let closed = maxcoh_depleted(z, &p, eta0).unwrap();
        let general = exchange_at(z, &sol).unwrap().j;
        max_dev = max_dev.max((closed - general).abs() / eta0);
        if closed < prev {
            monotone = false;
        }
        prev = closed;
    }
    let (c1, c2) = regimes::maxcoh_entrance_amplitudes(om10, lam);
    let want1 = 1.0 / (1.0 + zeta * zeta).sqrt();
    let want2 = -zeta / (1.0 + zeta * zeta).sqrt();
    let state_dev = (c1 - want1).abs().max((c2 - want2).abs());
    let zeta_dev = (zeta - std::f64::consts::SQRT_2).abs();
    check(
        "04 maximum-coherence depleted reproduction",
        max_dev <= tol::MAXCOH_ROUTE_AGREEMENT_REL
            && monotone
            && prev > 0.9 * eta0
            && state_dev <= tol::ENTRANCE_STATE_ABS
            && zeta_dev <= tol::ENTRANCE_STATE_ABS,
        format!(
            "route deviation {max_dev:.2e}, monotone = {monotone}, J(end) = {prev:.4}, entrance-state deviation {state_dev:.2e}, zeta = {zeta}"
        ),
    );
}

#[test]
fn criterion_05_undepleted_reductions() {
    // Weak/strong flux ratio 1e-3: each closed small-signal form matches the
    // general elliptic solution within 1% of the weak flux over two periods.
    let p = reference_params();

    // (a) EIT: weak omega1 pump, matched
    let b = BoundaryFields::cw(1e-3, 1.0, 0.0);
    let sol = AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
    let (spec, _) = regimes::regime_parameters(RegimeTag::EitUndepleted, &p, &b, None).unwrap();
    let mut dev_eit = 0.0f64;
    for k in 0..200 {
        let z = 2.0 * sol.period() * k as f64 / 199.0;
        let lin = regimes::linear_solution(&spec, b.eta10, z);
        let gen = exchange_at(z, &sol).unwrap().j;
        dev_eit = dev_eit.max((lin - gen).abs() / b.eta10);
    }

    // (b) maximum coherence: weak omega2, deep far-detuning, mismatch
    // cancelled through the background dispersion knob
    let mut pm = reference_params();
    let bm = BoundaryFields::cw(1.0, 1e-3, 0.0);
    let om10 = (pm.mu1 * bm.eta10).sqrt();
    pm.delta3 = 4000.0 * om10;
    pm.delta_k = 0.25 * pm.n_density * ((pm.mu1 / bm.eta10).sqrt() + (pm.mu2 - pm.mu3) / pm.delta3);
    let solm = AdiabaticSolution::solve(&pm, &bm, Branch::NearestTo(om10)).unwrap();
    let mut dev_mc = 0.0f64;
    for k in 0..200 {
        let z = 2.0 * solm.period() * k as f64 / 199.0;
        let (closed, _) = regimes::maxcoh_undepleted(z, &pm, &bm).unwrap();
        let gen = exchange_at(z, &solm).unwrap().j;
        dev_mc = dev_mc.max((closed - gen).abs() / bm.eta20);
    }

    // (c) conventional: weak omega1, large detunings, mild mismatch
    let mut pc = reference_params();
    pc.delta2 = 200.0;
    pc.delta3 = 300.0;
    pc.delta_k = -0.5 * pc.n_density * 0.002; // q = 0.002
    let bc = BoundaryFields::cw(1e-3, 1.0, 0.0);
    let solc = AdiabaticSolution::solve(&pc, &bc, Branch::GroundConnected).unwrap();
    let mut dev_cv = 0.0f64;
    for k in 0..200 {
        let z = 2.0 * solc.period() * k as f64 / 199.0;
        let (closed, _) = conventional(z, &pc, &bc).unwrap();
        let gen = exchange_at(z, &solc).unwrap().j;
        dev_cv = dev_cv.max((closed - gen).abs() / bc.eta10);
    }

    check(
        "05 undepleted-limit reductions",
        dev_eit <= tol::UNDEPLETED_REDUCTION_REL
            && dev_mc <= tol::UNDEPLETED_REDUCTION_REL
            && dev_cv <= tol::UNDEPLETED_REDUCTION_REL,
        format!(
            "relative deviations: EIT {dev_eit:.2e}, max-coherence {dev_mc:.2e}, conventional {dev_cv:.2e}"
        ),
    );
}

#[test]
fn criterion_06_conservation_laws() {
    // Lossless Maxwell-Bloch conserves eta1 + eta3 and eta1 - eta2; the
    // canonical integrator conserves the reduced Hamiltonian.
    let p = reference_params();
    let b = BoundaryFields::cw(1.0, 1.0, 0.0);
    let poly = CharPoly::new(&p, &b);
    let lam0 = entrance_eigenvalue(&poly, 0.0, Branch::GroundConnected).unwrap();
    let grid = SpaceTimeGrid::uniform(8.0, 4801, 0.0, 6.0, 13).unwrap();
    let mb = integrate_mb(
        &p,
        &b,
        &grid,
        &IntegratorConfig::default(),
        MbInit::AdiabaticBootstrap { lambda0: lam0 },
        ExecMode::Parallel,
    )
    .unwrap();

    let mut pp = reference_params();
    pp.delta2 = -0.02;
    let sol = AdiabaticSolution::solve(&pp, &b, Branch::GroundConnected).unwrap();
    let zs = linspace(0.0, 5.0 * sol.period(), 501);
    let ode = integrate_canonical(
        &pp,
        &b,
        &zs,
        &IntegratorConfig::default(),
        Branch::GroundConnected,
    )
    .unwrap();

    check(
        "06 conservation laws",
        mb.manley_rowe_drift <= tol::MB_MANLEY_ROWE_DRIFT
            && ode.lambda_drift <= tol::CANONICAL_H_DRIFT_REL,
        format!(
            "MB Manley-Rowe drift {:.2e} (<= {:.0e}), canonical H drift {:.2e} over 5 periods (<= {:.0e})",
            mb.manley_rowe_drift,
            tol::MB_MANLEY_ROWE_DRIFT,
            ode.lambda_drift,
            tol::CANONICAL_H_DRIFT_REL
        ),
    );
}

#[test]
fn criterion_07_loss_exponent() {
    // Undepleted EIT with decay: the fitted exponential envelope of the
    // generated-flux peaks matches Gamma * kappa within 5%.
    let mut p = reference_params();
    let b_fluxes = (1e-3, 1.0);
    let om2 = (p.mu2 * b_fluxes.1).sqrt();
    p.gamma = 0.1 * om2 / (p.mu1 / p.mu3).sqrt(); // Gamma = 0.1
    let (spec, _) = regimes::regime_parameters(
        RegimeTag::EitUndepleted,
        &p,
        &BoundaryFields::cw(b_fluxes.0, b_fluxes.1, 0.0),
        None,
    )
    .unwrap();
    let gamma_kappa = spec.gamma_loss * spec.kappa;

    // omega2 on from the start (|1> is its exact dark state), omega1 ramped;
    // the plateau must be long enough for the atomic transients (damped at
    // ~gamma/2) to settle at every depth before the envelope is fitted
    let t_end = 30.0 + 40.0 / p.gamma;
    let taus = linspace(0.0, t_end, 400);
    let boundary = BoundaryFields {
        eta10: b_fluxes.0,
        eta20: b_fluxes.1,
        eta30: 0.0,
        phi0: 0.0,
        envelope1: Envelope::smoothstep_on(2.0, 28.0, taus.clone()).unwrap(),
        envelope2: Envelope::flat(),
    };
    let z_max = 3.6 * std::f64::consts::PI / spec.kappa;
    let grid = SpaceTimeGrid {
        z: linspace(0.0, z_max, 1601),
        tau: linspace(0.0, t_end, 481),
    };
    let sol = integrate_mb(
        &p,
        &boundary,
        &grid,
        &IntegratorConfig::default(),
        MbInit::GroundState,
        ExecMode::Parallel,
    )
    .unwrap();
    let ti = grid.tau.len() - 1;
    // peak extraction and log-linear fit
    let mut zs_pk = Vec::new();
    let mut ln_pk = Vec::new();
    for i in 1..grid.z.len() - 1 {
        let e3 = |k: usize| sol.eta[ti][k][2];
        if e3(i) > e3(i - 1) && e3(i) > e3(i + 1) && e3(i) > 1e-8 {
            // parabolic refinement of the peak
            let (ym, y0, yp) = (e3(i - 1), e3(i), e3(i + 1));
            let denom = ym - 2.0 * y0 + yp;
            let dz = grid.z[1] - grid.z[0];
            let off = if denom != 0.0 {
                0.5 * (ym - yp) / denom
            } else {
                0.0
            };
            let peak = y0 - 0.25 * (ym - yp) * off;
            zs_pk.push(grid.z[i] + off * dz);
            ln_pk.push(peak.ln());
        }
    }
    assert!(zs_pk.len() >= 3, "need >= 3 peaks, found {}", zs_pk.len());
    // least squares slope
    let n = zs_pk.len() as f64;
    let sx: f64 = zs_pk.iter().sum();
    let sy: f64 = ln_pk.iter().sum();
    let sxx: f64 = zs_pk.iter().map(|x| x * x).sum();
    let sxy: f64 = zs_pk.iter().zip(&ln_pk).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let fitted = -slope;
    check(
        "07 loss exponent",
        (fitted - gamma_kappa).abs() <= tol::LOSS_EXPONENT_REL * gamma_kappa,
        format!(
            "fitted decay {fitted:.5} vs Gamma*kappa {gamma_kappa:.5} ({:.2}%) from {} peaks",
            100.0 * (fitted - gamma_kappa).abs() / gamma_kappa,
            zs_pk.len()
        ),
    );
}

#[test]
fn criterion_08_special_functions() {
    // F and Pi against the defining-integral quadrature, sn against the
    // amplitude-inversion identity, on a 20x20 grid with near-degenerate
    // modulus stress points.
    let mut moduli: Vec<f64> = (0..18).map(|k| 0.97 * k as f64 / 17.0).collect();
    moduli.push(0.999);
    moduli.push(1.0 - 1e-6);
    let mut worst_f = 0.0f64;
    let mut worst_pi = 0.0f64;
    let mut worst_sn = 0.0f64;
    for i in 0..20 {
        let g = std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / 20.0;
        for &p in &moduli {
            let f = ellip_f(g, p).unwrap();
            let f_q = quadrature_elliptic(g, p, None).unwrap();
            worst_f = worst_f.max((f - f_q).abs() / f_q.abs().max(1.0));
            let r = p * p;
            if r * g.sin() * g.sin() < 1.0 - 1e-12 {
                let pi_v = ellip_pi(g, r, p).unwrap();
                let pi_q = quadrature_elliptic(g, p, Some(r)).unwrap();
                worst_pi = worst_pi.max((pi_v - pi_q).abs() / pi_q.abs().max(1.0));
            }
            let sn = jacobi_sn(f, p).unwrap();
            worst_sn = worst_sn.max((sn - g.sin()).abs());
        }
    }
    check(
        "08 special functions",
        worst_f <= tol::ELLIPTIC_ABS && worst_pi <= tol::ELLIPTIC_ABS && worst_sn <= tol::SN_ABS,
        format!("max deviations: F {worst_f:.2e}, Pi {worst_pi:.2e}, sn {worst_sn:.2e}"),
    );
}

#[test]
fn criterion_09_conventional_limits() {
    // tanh^2 limit (matched, equal inputs) and sinc^2 limit (strong
    // mismatch) of the conventional-regime solution.
    let mut p = reference_params();
    p.delta2 = 200.0;
    p.delta3 = 300.0;
    let b = BoundaryFields::cw(1.0, 1.0, 0.0);
    let (tuned, _) = regimes::compensation_tuning(RegimeTag::Conventional, &p, &b).unwrap();
    if let regimes::TunedParameter::Q(q) = tuned {
        p.delta_k = -0.5 * p.n_density * q;
    }
    let kap_n = 0.5 * (p.mu1 * p.mu2 * p.mu3).sqrt() / (p.delta2 * p.delta3);
    let mut worst_tanh = 0.0f64;
    for k in 1..120 {
        let z = 3.0 / kap_n * k as f64 / 119.0;
        let (j, _) = conventional(z, &p, &b).unwrap();
        let t = (kap_n * z).tanh().powi(2);
        worst_tanh = worst_tanh.max((j - t).abs() / t.max(1e-6));
    }

    let mut p2 = reference_params();
    p2.delta2 = 200.0;
    p2.delta3 = 300.0;
    p2.delta_k = 0.005; // q = -0.01: B1 ~ 1e6 >> eta
    let b2 = BoundaryFields::cw(1.0, 0.8, 0.0);
    let (spec, _) = regimes::regime_parameters(RegimeTag::Conventional, &p2, &b2, None).unwrap();
    let dkp = spec.delta_k_prime;
    let mmm = p2.mu1 * p2.mu2 * p2.mu3;
    let mut worst_sinc = 0.0f64;
    for k in 1..120 {
        let z = 3.0 * 2.0 * std::f64::consts::PI / dkp.abs() * k as f64 / 119.0;
        let (j, _) = conventional(z, &p2, &b2).unwrap();
        let sinc = mmm * b2.eta10 * b2.eta20 / (4.0 * (p2.delta2 * p2.delta3).powi(2))
            * (dkp * z / 2.0).sin().powi(2)
            / (dkp / 2.0).powi(2);
        if sinc > 1e-10 * b2.eta10 {
            worst_sinc = worst_sinc.max((j - sinc).abs() / sinc);
        }
    }
    check(
        "09 conventional limits",
        worst_tanh <= tol::CONVENTIONAL_LIMIT_REL && worst_sinc <= tol::CONVENTIONAL_LIMIT_REL,
        format!("tanh^2 deviation {worst_tanh:.2e}, sinc^2 deviation {worst_sinc:.2e}"),
    );
}

#[test]
fn criterion_10_phase_behavior() {
    // Matched case: |cos phi| ~ 0 between turning points; phi jumps by pi
    // across each turning point.
    let p = reference_params();
    let b = BoundaryFields::cw(0.5, 1.0, 0.0);
    let sol = AdiabaticSolution::solve(&p, &b, Branch::GroundConnected).unwrap();
    let zq = sol.z_quarter;
    let mut worst_cos = 0.0f64;
    for k in 1..200 {
        // strictly between the turning points at 0, zq, 2 zq, ...
        let z = 2.0 * zq * k as f64 / 200.0;
        if (z / zq - 1.0).abs() < 1e-3 || (z / zq - 2.0).abs() < 1e-3 {
            continue;
        }
        let st = exchange_at(z, &sol).unwrap();
        worst_cos = worst_cos.max(st.phi.cos().abs());
    }
    // jumps across the upper turning point and the return to vacuum
    let eps = 1e-6 * zq;
    let jump1 = {
        let a = exchange_at(zq - eps, &sol).unwrap().phi;
        let b = exchange_at(zq + eps, &sol).unwrap().phi;
        ((a - b).abs() - std::f64::consts::PI).abs()
    };
    let jump2 = {
        let a = exchange_at(2.0 * zq - eps, &sol).unwrap().phi;
        let b = exchange_at(2.0 * zq + eps, &sol).unwrap().phi;
        ((a - b).abs() - std::f64::consts::PI).abs()
    };
    check(
        "10 phase behavior",
        worst_cos <= tol::PHASE_COS_BOUND
            && jump1 <= tol::PHASE_JUMP_ABS
            && jump2 <= tol::PHASE_JUMP_ABS,
        format!("max |cos phi| = {worst_cos:.2e}, jump deviations ({jump1:.2e}, {jump2:.2e})"),
    );
}

#[test]
fn criterion_11_adiabatic_convergence() {
    // Pulse-duration scan over three decades of gap*tau: the deviation of
    // the Maxwell-Bloch run from the analytic trajectory decreases
    // monotonically and ends below 1e-3 eta0.
    let p = reference_params();
    let eta0 = 1.0;
    let cw = BoundaryFields::cw(eta0, eta0, 0.0);
    let asol = AdiabaticSolution::solve(&p, &cw, Branch::GroundConnected).unwrap();
    let gap = ((p.mu1 + p.mu2) * eta0).sqrt(); // entrance eigenvalue splitting
    let mut devs = Vec::new();
    let mut gap_taus = Vec::new();
    for ramp in [2.0, 20.0, 200.0, 2000.0] {
        let t_on2 = 0.1 * ramp;
        let t_on1 = t_on2 + 1.3 * ramp;
        let plateau = t_on1 + 1.4 * ramp;
        let t_end = plateau + 0.3 * ramp;
        let taus = linspace(0.0, t_end, 600);
        let boundary = BoundaryFields {
            eta10: eta0,
            eta20: eta0,
            eta30: 0.0,
            phi0: 0.0,
            envelope1: Envelope::smoothstep_on(t_on1, 1.2 * ramp, taus.clone()).unwrap(),
            envelope2: Envelope::smoothstep_on(t_on2, ramp, taus.clone()).unwrap(),
        };
        let grid = SpaceTimeGrid {
            z: linspace(0.0, 20.0, 801),
            tau: linspace(0.0, t_end, 901),
        };
        let sol = integrate_mb(
            &p,
            &boundary,
            &grid,
            &IntegratorConfig::default(),
            MbInit::GroundState,
            ExecMode::Parallel,
        )
        .unwrap();
        let ti = grid.tau.len() - 1;
        let mut dev = 0.0f64;
        for (zi, &z) in grid.z.iter().enumerate() {
            let j_mb = sol.eta[ti][zi][2];
            let j_an = exchange_at(z, &asol).unwrap().j;
            dev = dev.max((j_mb - j_an).abs());
        }
        devs.push(dev);
        gap_taus.push(gap * ramp);
    }
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    let final_ok = *devs.last().unwrap() <= tol::ADIABATIC_FINAL_REL * eta0;
    check(
        "11 adiabatic convergence",
        monotone && final_ok,
        format!(
            "gap*tau = {:?}, max deviations = {:?} (monotone = {monotone}, final <= {:.0e})",
            gap_taus
                .iter()
                .map(|g| format!("{g:.1}"))
                .collect::<Vec<_>>(),
            devs.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>(),
            tol::ADIABATIC_FINAL_REL
        ),
    );
}
