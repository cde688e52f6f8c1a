//! Scenario files: one TOML document describing medium, boundary, grid and
//! run options. Unknown keys are hard errors so typos cannot silently fall
//! back to defaults.

use serde::Deserialize;
use triwave::hamiltonian::Branch;
use triwave::model::{BoundaryFields, Envelope, MediumParams};
use triwave::oracle::{linspace, SpaceTimeGrid};
use triwave::regimes;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub medium: MediumSection,
    pub boundary: BoundarySection,
    pub grid: GridSection,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSection {
    pub density: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    #[serde(default)]
    pub delta2: f64,
    #[serde(default)]
    pub delta3: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub delta_k: f64,
    #[serde(default)]
    pub theta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySection {
    pub eta10: f64,
    pub eta20: f64,
    #[serde(default)]
    pub eta30: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default)]
    pub envelope1: EnvelopeSpec,
    #[serde(default)]
    pub envelope2: EnvelopeSpec,
}

#[derive(Debug, Deserialize, Default, Clone)]
#[serde(tag = "shape", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EnvelopeSpec {
    #[default]
    Flat,
    Gaussian {
        fwhm: f64,
        #[serde(default)]
        center: f64,
    },
    Sech {
        width: f64,
        #[serde(default)]
        center: f64,
    },
    Smoothstep {
        start: f64,
        width: f64,
    },
    Samples {
        tau: Vec<f64>,
        value: Vec<f64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub z_max: f64,
    pub n_z: usize,
    #[serde(default)]
    pub tau_min: f64,
    #[serde(default)]
    pub tau_max: f64,
    #[serde(default = "one")]
    pub n_tau: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default)]
    pub regime: RegimeName,
    #[serde(default)]
    pub solver: SolverName,
    #[serde(default = "default_seed")]
    pub seed_eps: f64,
}

fn default_seed() -> f64 {
    1e-12
}

#[derive(Debug, Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeName {
    #[default]
    General,
    EitUndepleted,
    EitDepleted,
    MaxcohUndepleted,
    MaxcohDepleted,
    Conventional,
}

#[derive(Debug, Deserialize, Default, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum SolverName {
    #[default]
    Analytic,
    CanonicalOde,
    MaxwellBloch,
    All,
}

/// Scenario resolved into library types.
pub struct Resolved {
    pub params: MediumParams,
    pub boundary: BoundaryFields,
    pub grid: SpaceTimeGrid,
    pub regime: RegimeName,
    pub solver: SolverName,
    pub seed_eps: f64,
    pub hash: String,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, String> {
        toml::from_str(text).map_err(|e| format!("scenario parse error: {e}"))
    }

    pub fn resolve(&self, text: &str) -> Result<Resolved, String> {
        let m = &self.medium;
        let params = MediumParams {
            n_density: m.density,
            mu1: m.mu1,
            mu2: m.mu2,
            mu3: m.mu3,
            delta2: m.delta2,
            delta3: m.delta3,
            gamma: m.gamma,
            delta_k: m.delta_k,
            theta: m.theta,
        };
        if self.grid.n_z < 2 || self.grid.z_max <= 0.0 {
            return Err("grid needs z_max > 0 and n_z >= 2".into());
        }
        if self.grid.n_tau == 0 {
            return Err("grid needs n_tau >= 1".into());
        }
        if self.grid.n_tau > 1 && self.grid.tau_max <= self.grid.tau_min {
            return Err("grid needs tau_max > tau_min when n_tau > 1".into());
        }
        // envelopes sampled on a fine internal grid spanning the tau axis
        let (t0, t1) = if self.grid.n_tau > 1 {
            (self.grid.tau_min, self.grid.tau_max)
        } else {
            (self.grid.tau_min, self.grid.tau_min + 1.0)
        };
        let env_grid = linspace(t0, t1, 512);
        let build = |spec: &EnvelopeSpec| -> Result<Envelope, String> {
            let env = match spec {
                EnvelopeSpec::Flat => Ok(Envelope::flat()),
                EnvelopeSpec::Gaussian { fwhm, center } => {
                    Envelope::gaussian(*fwhm, *center, env_grid.clone())
                }
                EnvelopeSpec::Sech { width, center } => {
                    Envelope::sech(*width, *center, env_grid.clone())
                }
                EnvelopeSpec::Smoothstep { start, width } => {
                    Envelope::smoothstep_on(*start, *width, env_grid.clone())
                }
                EnvelopeSpec::Samples { tau, value } => {
                    Envelope::from_samples(tau.clone(), value.clone())
                }
            };
            env.map_err(|e| format!("envelope: {e}"))
        };
        let boundary = BoundaryFields {
            eta10: self.boundary.eta10,
            eta20: self.boundary.eta20,
            eta30: self.boundary.eta30,
            phi0: self.boundary.phi0,
            envelope1: build(&self.boundary.envelope1)?,
            envelope2: build(&self.boundary.envelope2)?,
        };
        let tau = if self.grid.n_tau == 1 {
            vec![self.grid.tau_min]
        } else {
            linspace(self.grid.tau_min, self.grid.tau_max, self.grid.n_tau)
        };
        let grid = SpaceTimeGrid {
            z: linspace(0.0, self.grid.z_max, self.grid.n_z),
            tau,
        };
        use sha2::Digest;
        let hash = format!("{:x}", sha2::Sha256::digest(text.as_bytes()));
        Ok(Resolved {
            params,
            boundary,
            grid,
            regime: self.run.regime,
            solver: self.run.solver,
            seed_eps: self.run.seed_eps,
            hash,
        })
    }
}

impl Resolved {
    /// Eigenvalue-branch selector implied by the regime tag: prepared
    /// far-detuned superpositions track the branch near the closed-form
    /// estimate; everything else connects to the ground state.
    pub fn branch(&self) -> Result<Branch, String> {
        match self.regime {
            RegimeName::MaxcohUndepleted | RegimeName::MaxcohDepleted => {
                let lam = regimes::maxcoh_eigenvalue_estimate(&self.params, &self.boundary)
                    .map_err(|e| e.to_string())?;
                Ok(Branch::NearestTo(lam))
            }
            _ => Ok(Branch::GroundConnected),
        }
    }
}
