//! Closed-form gate under the instantaneous-response (delta-kernel)
//! approximation, and the nonlocal toy gate it is contrasted with.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::state::TwoPhotonState;
use crate::units::mode_count;
use crate::{Error, Result};

/// Placement and strength of the Kerr medium on the unit ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumConfig {
    /// Entry point of the medium.
    pub z0: f64,
    /// Length of the medium.
    pub l: f64,
    /// Coupling `η` (the Kerr strength with the field normalization absorbed).
    pub eta: f64,
    pub n_max: usize,
}

impl MediumConfig {
    pub fn new(z0: f64, l: f64, eta: f64, n_max: usize) -> Result<Self> {
        let medium = MediumConfig { z0, l, eta, n_max };
        medium.validate()?;
        Ok(medium)
    }

    /// Medium whose coupling gives the interaction strength `Φ = η·M·l`.
    pub fn with_phi(z0: f64, l: f64, phi: f64, n_max: usize) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "medium length must be > 0, got {l}"
            )));
        }
        Self::new(z0, l, phi / (mode_count(n_max) as f64 * l), n_max)
    }

    /// Medium on the second half of the ring, `z0 = l = 1/2`.
    pub fn half_ring(phi: f64, n_max: usize) -> Self {
        Self::with_phi(0.5, 0.5, phi, n_max).expect("half-ring medium is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.z0) {
            return Err(Error::InvalidParameter(format!(
                "z0 must lie in [0, 1), got {}",
                self.z0
            )));
        }
        if !(self.l > 0.0 && self.l <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "l must lie in (0, 1], got {}",
                self.l
            )));
        }
        if self.z0 + self.l > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "medium [{}, {}] extends past the end of the ring",
                self.z0,
                self.z0 + self.l
            )));
        }
        if !self.eta.is_finite() {
            return Err(Error::InvalidParameter("eta must be finite".into()));
        }
        Ok(())
    }

    pub fn mode_count(&self) -> usize {
        mode_count(self.n_max)
    }

    /// Interaction strength `Φ = η·M·l`.
    pub fn phi(&self) -> f64 {
        self.eta * self.mode_count() as f64 * self.l
    }

    /// `∫_{z0}^{z0+l} e^{2πi·freq·z} dz` in closed form.
    pub fn segment_integral(&self, freq: i64) -> Complex64 {
        if freq == 0 {
            return Complex64::new(self.l, 0.0);
        }
        let k = 2.0 * PI * freq as f64;
        let upper = Complex64::from_polar(1.0, k * (self.z0 + self.l));
        let lower = Complex64::from_polar(1.0, k * self.z0);
        (upper - lower) / Complex64::new(0.0, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateSource {
    Analytic,
    Numeric,
    NonlocalToy,
}

/// Outcome of one gate run, summarized by its overlap with the input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateResult {
    pub overlap: Complex64,
    /// `|overlap|²`.
    pub fidelity_f0: f64,
    /// `-arg(overlap)` in `(-π, π]`.
    pub phase_phi: f64,
    pub phi_bare: f64,
    pub r: f64,
    pub source: GateSource,
}

impl GateResult {
    pub fn from_overlap(overlap: Complex64, phi_bare: f64, r: f64, source: GateSource) -> Self {
        GateResult {
            overlap,
            fidelity_f0: overlap.norm_sqr(),
            phase_phi: wrap_phase(-overlap.arg()),
            phi_bare,
            r,
            source,
        }
    }
}

/// Maps `-π` onto `π` so phases live in `(-π, π]`.
fn wrap_phase(phase: f64) -> f64 {
    if phase <= -PI {
        phase + 2.0 * PI
    } else {
        phase
    }
}

/// Fidelity and phase for interaction strength `Φ` and overlap parameter `r`.
pub fn fidelity_phase(phi_bare: f64, r: f64) -> GateResult {
    let (s, c) = phi_bare.sin_cos();
    let half = (0.5 * phi_bare).sin();
    GateResult {
        overlap: Complex64::new(1.0 - r + r * c, -r * s),
        fidelity_f0: 1.0 - 4.0 * half * half * r * (1.0 - r),
        phase_phi: wrap_phase((r * s).atan2(1.0 - r + r * c)),
        phi_bare,
        r,
        source: GateSource::Analytic,
    }
}

/// Final state at `t = T`:
/// `c_{νμ}(T) = c_{νμ}(0) + (1/M)(e^{-iΦ} − 1) v_μ(0)`.
///
/// The result is not renormalized; its norm deviation measures how far the
/// delta-kernel approximation is from unitary for this input.
pub fn analytic_final_state(
    state0: &TwoPhotonState,
    medium: &MediumConfig,
) -> Result<TwoPhotonState> {
    if state0.n_max() != medium.n_max {
        return Err(Error::GridMismatch {
            left: state0.n_max(),
            right: medium.n_max,
        });
    }
    let m = state0.mode_count();
    let factor = (Complex64::from_polar(1.0, -medium.phi()) - 1.0) / m as f64;
    let v = state0.v_mu();
    let mut out = state0.clone();
    for (i, c) in out.amplitudes_mut().iter_mut().enumerate() {
        *c += factor * v[i / m + i % m];
    }
    Ok(out)
}

/// The nonlocal toy interaction `ħlε (Σa†a)(Σb†b)`, which multiplies every
/// two-photon amplitude by `e^{-iΦ'}`.
pub fn nonlocal_toy_gate(state0: &TwoPhotonState, phi_prime: f64) -> TwoPhotonState {
    let phase = Complex64::from_polar(1.0, -phi_prime);
    let mut out = state0.clone();
    for c in out.amplitudes_mut() {
        *c *= phase;
    }
    out
}

/// Classical local phase `κl·I_b` imprinted on field `a` after the medium in
/// the Heisenberg picture, evaluated on the samples of `I_b` (at `t = T` the
/// retarded coordinate `z − ct` coincides with `z`).
pub fn heisenberg_phase_profile(pb_intensity: &[f64], kappa_l: f64) -> Vec<f64> {
    pb_intensity.iter().map(|i| kappa_l * i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{make_pulse, spectral_report, PulseShape, PulseSpectrum};
    use approx::assert_abs_diff_eq;

    #[test]
    fn half_r_gives_half_phase() {
        for phi in [0.1, 0.7, 1.5, 2.9] {
            let g = fidelity_phase(phi, 0.5);
            assert_abs_diff_eq!(g.phase_phi, phi / 2.0, epsilon = 1e-14);
            assert_abs_diff_eq!(g.fidelity_f0, (phi / 2.0).cos().powi(2), epsilon = 1e-14);
        }
    }

    #[test]
    fn worked_example_point() {
        let g = fidelity_phase(0.657, 0.4);
        assert_abs_diff_eq!(g.fidelity_f0, 0.90, epsilon = 0.005);
        assert_abs_diff_eq!(g.phase_phi, 0.26, epsilon = 0.005);
    }

    #[test]
    fn zero_r_is_identity() {
        let g = fidelity_phase(2.3, 0.0);
        assert_eq!(g.fidelity_f0, 1.0);
        assert_eq!(g.phase_phi, 0.0);
    }

    #[test]
    fn phase_at_pi_is_in_range() {
        let g = fidelity_phase(PI, 0.7);
        assert!(g.phase_phi > -PI && g.phase_phi <= PI);
        assert_abs_diff_eq!(g.fidelity_f0, 1.0 - 4.0 * 0.7 * 0.3, epsilon = 1e-15);
    }

    #[test]
    fn zero_phi_leaves_state_unchanged() {
        let p = make_pulse(PulseShape::Gaussian, 0.078, 0.25, 6).unwrap();
        let s = TwoPhotonState::product(&p, &p).unwrap();
        let out = analytic_final_state(&s, &MediumConfig::half_ring(0.0, 6)).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn single_pair_picks_up_full_phase() {
        let s = TwoPhotonState::product(
            &PulseSpectrum::single_mode(0),
            &PulseSpectrum::single_mode(0),
        )
        .unwrap();
        let phi = 1.234;
        let out = analytic_final_state(&s, &MediumConfig::half_ring(phi, 0)).unwrap();
        let expected = Complex64::from_polar(1.0, -phi);
        assert_abs_diff_eq!((out.get(0, 0) - expected).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gaussian_at_pi_matches_formula() {
        let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
        let r = spectral_report(&p).r;
        let s = TwoPhotonState::product(&p, &p).unwrap();
        let out = analytic_final_state(&s, &MediumConfig::half_ring(PI, 8)).unwrap();
        let f0 = out.overlap_with(&s).unwrap().norm_sqr();
        assert_abs_diff_eq!(f0, 1.0 - 4.0 * r * (1.0 - r), epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity_phase(PI, 0.4).fidelity_f0, 0.04, epsilon = 1e-12);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let s = TwoPhotonState::zeros(2);
        assert!(analytic_final_state(&s, &MediumConfig::half_ring(1.0, 3)).is_err());
    }

    #[test]
    fn toy_gate_is_a_global_phase() {
        let p = make_pulse(PulseShape::Gaussian, 0.078, 0.25, 6).unwrap();
        let s = TwoPhotonState::product(&p, &p).unwrap();
        let out = nonlocal_toy_gate(&s, PI);
        let o = out.overlap_with(&s).unwrap();
        assert_abs_diff_eq!(o.re, -1.0, epsilon = 1e-12);
        let g = GateResult::from_overlap(o, PI, 1.0, GateSource::NonlocalToy);
        assert_abs_diff_eq!(g.phase_phi, PI, epsilon = 1e-12);
        assert_abs_diff_eq!(g.fidelity_f0, 1.0, epsilon = 1e-12);
        assert_eq!(nonlocal_toy_gate(&s, 0.0), s);
    }

    #[test]
    fn heisenberg_profile_scales_intensity() {
        assert!(heisenberg_phase_profile(&[0.0; 8], 3.0)
            .iter()
            .all(|&x| x == 0.0));
        assert!(heisenberg_phase_profile(&[2.0; 8], 1.5)
            .iter()
            .all(|&x| x == 3.0));
    }

    #[test]
    fn medium_validation() {
        assert!(MediumConfig::new(0.6, 0.5, 1.0, 4).is_err());
        assert!(MediumConfig::new(0.5, 0.0, 1.0, 4).is_err());
        assert!(MediumConfig::new(-0.1, 0.5, 1.0, 4).is_err());
        assert!(MediumConfig::new(0.5, 0.5, f64::NAN, 4).is_err());
        let m = MediumConfig::with_phi(0.5, 0.5, 0.657, 8).unwrap();
        assert_abs_diff_eq!(m.phi(), 0.657, epsilon = 1e-15);
    }

    #[test]
    fn segment_integral_closed_form() {
        let m = MediumConfig::new(0.0, 1.0, 0.0, 1).unwrap();
        assert_abs_diff_eq!(m.segment_integral(3).norm(), 0.0, epsilon = 1e-15);
        let m = MediumConfig::new(0.25, 0.5, 0.0, 1).unwrap();
        assert_abs_diff_eq!(m.segment_integral(0).re, 0.5);
    }
}
