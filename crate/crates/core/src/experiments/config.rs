use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytic::MediumConfig;
use crate::dynamics::{EvolutionConfig, Method, DEFAULT_STEPS};
use crate::eit::{EitConfig, DEFAULT_EIT_STEPS};
use crate::modes::{minimal_n_max, PulseShape};
use crate::{Error, Result};

/// Environment variable supplying the default worker count.
pub const JOBS_ENV: &str = "KERR_SIM_JOBS";

/// Largest mode cutoff a run may request; the two-photon matrix holds
/// `(2·n_max + 1)²` amplitudes.
pub const MAX_N_MAX: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Fig1,
    Sweep,
    EitLoss,
    RCalc,
    WorkedExample,
}

impl std::str::FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "fig1" => Ok(Experiment::Fig1),
            "sweep" => Ok(Experiment::Sweep),
            "eit_loss" => Ok(Experiment::EitLoss),
            "r_calc" => Ok(Experiment::RCalc),
            "worked_example" => Ok(Experiment::WorkedExample),
            other => Err(Error::Config(format!("unknown experiment `{other}`"))),
        }
    }
}

/// Everything one run needs, as read from a JSON file. Unset optional
/// fields fall back to per-experiment defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub experiment: Option<Experiment>,

    pub shape: PulseShape,
    pub sigma: f64,
    pub z1: Option<f64>,
    pub n_max: Option<usize>,

    pub z0: f64,
    pub l: f64,
    pub eta: Option<f64>,
    #[serde(rename = "Phi")]
    pub phi: Option<f64>,

    pub steps: usize,
    pub method: Method,

    pub g13: f64,
    #[serde(rename = "Omega_c")]
    pub omega_c: f64,
    pub gamma31: f64,
    #[serde(rename = "Gamma31")]
    pub radiative_gamma31: f64,
    pub eit_steps: usize,

    #[serde(rename = "Phi_min")]
    pub phi_min: f64,
    #[serde(rename = "Phi_max")]
    pub phi_max: Option<f64>,
    pub points: usize,

    pub sigma_min: f64,
    pub sigma_max: f64,
    pub sigma_points: usize,

    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiment: None,
            shape: PulseShape::Gaussian,
            sigma: 0.059,
            z1: None,
            n_max: None,
            z0: 0.5,
            l: 0.5,
            eta: None,
            phi: None,
            steps: DEFAULT_STEPS,
            method: Method::FullMatrix,
            g13: 30.0,
            omega_c: 2000.0,
            gamma31: 1000.0,
            radiative_gamma31: 1000.0,
            eit_steps: DEFAULT_EIT_STEPS,
            phi_min: 0.0,
            phi_max: None,
            points: 11,
            sigma_min: 0.0101,
            sigma_max: 0.1,
            sigma_points: 7,
            out: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta.is_some() && self.phi.is_some() {
            return Err(Error::Config("give either eta or Phi, not both".into()));
        }
        if self.points == 0 || self.sigma_points == 0 {
            return Err(Error::Config("sweep grids need at least one point".into()));
        }
        if !(self.sigma_min > 0.0 && self.sigma_min <= self.sigma_max) {
            return Err(Error::Config(format!(
                "need 0 < sigma_min <= sigma_max, got {} and {}",
                self.sigma_min, self.sigma_max
            )));
        }
        if !(self.sigma > 0.0) {
            return Err(Error::Config(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        for sigma in [self.sigma, self.sigma_min] {
            let n_max = self.n_max_for(sigma);
            if n_max > MAX_N_MAX {
                return Err(Error::Config(format!(
                    "sigma = {sigma} needs n_max = {n_max}, above the limit {MAX_N_MAX}"
                )));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Pulse centre; pulse experiments default to `L/4`, the EIT sweep to
    /// `L/2` so the pulse peaks at the atom half way through the period.
    pub fn z1_for(&self, experiment: Experiment) -> f64 {
        self.z1.unwrap_or(match experiment {
            Experiment::EitLoss => 0.5,
            _ => 0.25,
        })
    }

    pub fn n_max_for(&self, sigma: f64) -> usize {
        self.n_max.unwrap_or_else(|| minimal_n_max(sigma).max(1))
    }

    pub fn evolution(&self) -> EvolutionConfig {
        EvolutionConfig::new(self.steps, self.method)
    }

    pub fn eit(&self) -> EitConfig {
        EitConfig {
            g13: self.g13,
            omega_c: self.omega_c,
            gamma31: self.gamma31,
            radiative_gamma31: self.radiative_gamma31,
            steps: self.eit_steps,
        }
    }

    /// Medium for a given interaction strength on the configured placement.
    pub fn medium_with_phi(&self, phi: f64, n_max: usize) -> Result<MediumConfig> {
        MediumConfig::with_phi(self.z0, self.l, phi, n_max)
    }

    /// Medium from the configured `eta` or `Phi` (default `Φ = π`).
    pub fn medium(&self, n_max: usize) -> Result<MediumConfig> {
        match (self.eta, self.phi) {
            (Some(eta), None) => MediumConfig::new(self.z0, self.l, eta, n_max),
            (None, phi) => self.medium_with_phi(phi.unwrap_or(std::f64::consts::PI), n_max),
            (Some(_), Some(_)) => Err(Error::Config("give either eta or Phi, not both".into())),
        }
    }

    pub fn jobs(&self) -> usize {
        self.jobs
            .or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()))
            .filter(|&j| j > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}
