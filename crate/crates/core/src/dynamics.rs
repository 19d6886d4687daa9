//! Exact Schrödinger-picture evolution of the two-photon state under the
//! local Kerr Hamiltonian, integrated with fixed-step classical RK4 over one
//! quantization period `t ∈ [0, 1]`.
//!
//! The equations of motion are
//!
//! ```text
//! dc_nm/dt = -iη Σ_{n'm'} c_{n'm'} K(n'+m' − n−m, t)
//! K(Δ, t)  = ∫_{z0}^{z0+l} e^{-2πiΔ(t−z)} dz
//! ```
//!
//! The right-hand side depends on the primed pair only through `μ' = n'+m'`,
//! so each stage costs `O(M²)` once the pair sums `v_μ'` are known.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{GateResult, GateSource, MediumConfig};
use crate::modes::PulseSpectrum;
use crate::rk4;
use crate::state::TwoPhotonState;
use crate::{Error, Result};

pub const DEFAULT_STEPS: usize = 20_000;
pub const MIN_STEPS: usize = 1_000;
/// Norm drift beyond which an evolution is rejected.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Evolve every `c_nm`.
    #[default]
    FullMatrix,
    /// Evolve `v_μ` together with the `ν`-independent increment `d_μ`, with
    /// `c_{νμ}(t) = c_{νμ}(0) + d_μ(t)`.
    ReducedMu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub steps: usize,
    pub method: Method,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            steps: DEFAULT_STEPS,
            method: Method::FullMatrix,
        }
    }
}

impl EvolutionConfig {
    pub fn new(steps: usize, method: Method) -> Self {
        EvolutionConfig { steps, method }
    }
}

/// `∫_{z0}^{z0+l} e^{-2πiΔ(t−z)} dz`.
pub fn kernel(delta_mu: i64, t: f64, medium: &MediumConfig) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * delta_mu as f64 * t) * medium.segment_integral(delta_mu)
}

/// Kernel values for every `Δ ∈ [-span, span]` at a fixed time.
struct KernelTable {
    span: i64,
    spatial: Vec<Complex64>,
    current: Vec<Complex64>,
}

impl KernelTable {
    fn new(span: i64, medium: &MediumConfig) -> Self {
        let spatial: Vec<Complex64> = (-span..=span).map(|d| medium.segment_integral(d)).collect();
        let current = spatial.clone();
        KernelTable {
            span,
            spatial,
            current,
        }
    }

    fn at(&mut self, t: f64) {
        for (i, (k, s)) in self.current.iter_mut().zip(&self.spatial).enumerate() {
            let d = i as i64 - self.span;
            *k = s * Complex64::from_polar(1.0, -2.0 * PI * d as f64 * t);
        }
    }

    fn get(&self, delta: i64) -> Complex64 {
        self.current[(delta + self.span) as usize]
    }
}

/// `g_μ = Σ_μ' v_μ' K(μ' − μ, t)`, written into `out`.
fn couple(v: &[Complex64], kernel: &KernelTable, out: &mut [Complex64]) {
    for (mu, g) in out.iter_mut().enumerate() {
        *g = v
            .iter()
            .enumerate()
            .map(|(mu_p, &vp)| vp * kernel.get(mu_p as i64 - mu as i64))
            .sum();
    }
}

fn evolve_full_matrix(
    state0: &TwoPhotonState,
    medium: &MediumConfig,
    steps: usize,
) -> TwoPhotonState {
    let m = state0.mode_count();
    let n_mu = 2 * m - 1;
    let mut kernel = KernelTable::new(n_mu as i64 - 1, medium);
    let mut v = vec![Complex64::new(0.0, 0.0); n_mu];
    let mut g = vec![Complex64::new(0.0, 0.0); n_mu];
    let coupling = Complex64::new(0.0, -medium.eta);

    let mut y = state0.amplitudes().to_vec();
    rk4::integrate(
        &mut y,
        steps,
        |t, c, dc| {
            v.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
            for (i, &cnm) in c.iter().enumerate() {
                v[i / m + i % m] += cnm;
            }
            kernel.at(t);
            couple(&v, &kernel, &mut g);
            for (i, d) in dc.iter_mut().enumerate() {
                *d = coupling * g[i / m + i % m];
            }
        },
        |_| {},
    );
    TwoPhotonState::from_matrix(state0.n_max(), y).expect("shape preserved")
}

fn evolve_reduced(state0: &TwoPhotonState, medium: &MediumConfig, steps: usize) -> TwoPhotonState {
    let m = state0.mode_count();
    let n_mu = 2 * m - 1;
    let mut kernel = KernelTable::new(n_mu as i64 - 1, medium);
    let mut g = vec![Complex64::new(0.0, 0.0); n_mu];
    let coupling = Complex64::new(0.0, -medium.eta);
    // Number of ν values at fixed μ: 2·n_max − |μ| + 1.
    let n_max = state0.n_max() as i64;
    let multiplicity: Vec<f64> = (-2 * n_max..=2 * n_max)
        .map(|mu| (2 * n_max - mu.abs() + 1) as f64)
        .collect();

    // y = [v_μ ; d_μ]
    let mut y = state0.v_mu();
    y.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), n_mu));
    rk4::integrate(
        &mut y,
        steps,
        |t, y, dy| {
            kernel.at(t);
            couple(&y[..n_mu], &kernel, &mut g);
            let (dv, dd) = dy.split_at_mut(n_mu);
            for mu in 0..n_mu {
                dd[mu] = coupling * g[mu];
                dv[mu] = multiplicity[mu] * dd[mu];
            }
        },
        |_| {},
    );

    let increments = &y[n_mu..];
    let amplitudes = state0
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &c)| c + increments[i / m + i % m])
        .collect();
    TwoPhotonState::from_matrix(state0.n_max(), amplitudes).expect("shape preserved")
}

/// Integrates the two-photon amplitudes from `t = 0` to `t = T = 1`.
///
/// Fails with [`Error::NormDrift`] if the norm changes by more than
/// [`NORM_DRIFT_LIMIT`].
pub fn evolve(
    state0: &TwoPhotonState,
    medium: &MediumConfig,
    cfg: &EvolutionConfig,
) -> Result<TwoPhotonState> {
    medium.validate()?;
    if state0.n_max() != medium.n_max {
        return Err(Error::GridMismatch {
            left: state0.n_max(),
            right: medium.n_max,
        });
    }
    if cfg.steps < MIN_STEPS {
        return Err(Error::InvalidParameter(format!(
            "at least {MIN_STEPS} RK4 steps are required, got {}",
            cfg.steps
        )));
    }
    let out = match cfg.method {
        Method::FullMatrix => evolve_full_matrix(state0, medium, cfg.steps),
        Method::ReducedMu => evolve_reduced(state0, medium, cfg.steps),
    };
    let drift = (out.norm_sqr() - state0.norm_sqr()).abs();
    if !(drift <= NORM_DRIFT_LIMIT) {
        return Err(Error::NormDrift {
            drift,
            steps: cfg.steps,
        });
    }
    Ok(out)
}

/// Numeric gate outcome together with the norm error of the evolved state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericGate {
    pub result: GateResult,
    pub norm_error: f64,
}

/// Evolves `a ⊗ b` through the medium and projects back onto the input.
pub fn numeric_gate(
    a: &PulseSpectrum,
    b: &PulseSpectrum,
    medium: &MediumConfig,
    cfg: &EvolutionConfig,
) -> Result<NumericGate> {
    let state0 = TwoPhotonState::product(a, b)?;
    let state = evolve(&state0, medium, cfg)?;
    let overlap = state.overlap_with(&state0)?;
    Ok(NumericGate {
        result: GateResult::from_overlap(overlap, medium.phi(), state0.r(), GateSource::Numeric),
        norm_error: (state.norm_sqr() - 1.0).abs(),
    })
}
