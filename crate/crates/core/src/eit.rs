//! Four-level giant-Kerr atom driven by one single-photon wavepacket.
//!
//! Only field `a` and the `1 → 3 ← 2` EIT ladder are kept. The atom sits at
//! `z = 0`, so it sees the field `Σ c_n e^{-inωt}`, and level 3 decays at
//! `γ₃₁` out of the system:
//!
//! ```text
//! dc_n/dt = i g C₃ e^{inωt}
//! dC₃/dt  = -(γ₃₁/2) C₃ + i g Σ c_n e^{-inωt} − i(Ω_c/2) C₂
//! dC₂/dt  = -i(Ω_c/2) C₃
//! ```
//!
//! The norm then obeys `d/dt (Σ|c_n|² + |C₂|² + |C₃|²) = -γ₃₁|C₃|²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modes::{spectral_report, PulseSpectrum};
use crate::rk4;
use crate::units::SimUnits;
use crate::{Error, Result};

/// Upper bound on `rate·dt` for the fixed-step integrator.
pub const STIFFNESS_LIMIT: f64 = 0.1;

/// Required separation between the pulse bandwidth and the atomic rates for
/// the adiabatic predictions to apply.
pub const REGIME_FACTOR: f64 = 10.0;

pub const DEFAULT_EIT_STEPS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EitConfig {
    /// Single-photon coupling `g₁₃` on the `1 → 3` transition.
    pub g13: f64,
    /// Coupling-field Rabi frequency `Ω_c`.
    #[serde(rename = "Omega_c")]
    pub omega_c: f64,
    /// Decay rate `γ₃₁` of the `(1,3)` coherence.
    pub gamma31: f64,
    /// Radiative rate `Γ₃₁ ≤ γ₃₁`.
    #[serde(rename = "Gamma31")]
    pub radiative_gamma31: f64,
    pub steps: usize,
}

impl EitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Omega_c must be > 0, got {}",
                self.omega_c
            )));
        }
        if !(self.gamma31 >= 0.0 && self.gamma31.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma31 must be >= 0, got {}",
                self.gamma31
            )));
        }
        if !(self.radiative_gamma31 >= 0.0 && self.radiative_gamma31 <= self.gamma31) {
            return Err(Error::InvalidParameter(format!(
                "Gamma31 must lie in [0, gamma31], got {}",
                self.radiative_gamma31
            )));
        }
        if !self.g13.is_finite() {
            return Err(Error::InvalidParameter("g13 must be finite".into()));
        }
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be positive".into()));
        }
        Ok(())
    }

    /// Decay rate `Ω_c²/2γ₃₁` of the dark-state admixture after eliminating `C₃`.
    pub fn ground_decay_rate(&self) -> f64 {
        self.omega_c * self.omega_c / (2.0 * self.gamma31)
    }

    /// Whether a pulse of standard deviation `delta_omega` sits well inside
    /// both `γ₃₁` and `Ω_c²/2γ₃₁`.
    pub fn regime_ok(&self, delta_omega: f64) -> bool {
        REGIME_FACTOR * delta_omega <= self.gamma31
            && REGIME_FACTOR * delta_omega <= self.ground_decay_rate()
    }

    /// Fastest rate `dt` has to resolve for a pulse on `n_max` modes.
    fn fastest_rate(&self, n_max: usize) -> f64 {
        let mut rate = (0.5 * self.gamma31)
            .max(0.5 * self.omega_c)
            .max(n_max as f64 * SimUnits::OMEGA);
        if self.gamma31 > 0.0 {
            rate = rate.max(self.ground_decay_rate());
        }
        rate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EitResult {
    /// `∫₀ᵀ γ₃₁ |C₃|² dt`.
    pub loss_numeric: f64,
    /// Closed-form adiabatic estimate, see [`adiabatic_loss`].
    pub loss_adiabatic: f64,
    pub c3_max_sq: f64,
    /// `Σ |c_n(T)|²`.
    pub survival: f64,
    pub c2_final_sq: f64,
    pub c3_final_sq: f64,
    pub regime_ok: bool,
    /// `|C₃|²` at `t_k = k/steps`, `k = 0..=steps`.
    #[serde(skip)]
    pub c3_trajectory: Vec<f64>,
}

impl EitResult {
    /// `survival + |C₂(T)|² + |C₃(T)|² + loss`, which should equal the initial norm.
    pub fn accounted_norm(&self) -> f64 {
        self.survival + self.c2_final_sq + self.c3_final_sq + self.loss_numeric
    }

    pub fn time_of_step(&self, k: usize) -> f64 {
        k as f64 / (self.c3_trajectory.len() - 1) as f64
    }
}

/// Optical-depth bookkeeping for a slab of atoms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumPhysical {
    /// `ρ σ_a l`.
    pub rho_sigma_l: f64,
    /// `σ_a / A`.
    pub sigma_a_over_a: f64,
    /// `ρ A l`.
    pub n_atoms: f64,
}

impl MediumPhysical {
    /// Consistent record from atom count and `σ_a/A`: `ρσ_a l = N σ_a/A`.
    pub fn from_atoms(n_atoms: f64, sigma_a_over_a: f64) -> Self {
        MediumPhysical {
            rho_sigma_l: n_atoms * sigma_a_over_a,
            sigma_a_over_a,
            n_atoms,
        }
    }
}

/// Integrates the atom-field amplitudes over one quantization period.
pub fn evolve_atom(p: &PulseSpectrum, cfg: &EitConfig) -> Result<EitResult> {
    cfg.validate()?;
    let steps = cfg.steps;
    let h = SimUnits::T / steps as f64;
    let rate_dt = cfg.fastest_rate(p.n_max()) * h;
    if rate_dt > STIFFNESS_LIMIT {
        let min_steps =
            (cfg.fastest_rate(p.n_max()) * SimUnits::T / STIFFNESS_LIMIT).ceil() as usize;
        return Err(Error::Stiffness {
            rate_dt,
            limit: STIFFNESS_LIMIT,
            min_steps,
        });
    }

    let m = p.mode_count();
    let orders: Vec<f64> = p.modes().map(|(n, _)| n as f64).collect();
    let g = cfg.g13;
    let half_gamma = 0.5 * cfg.gamma31;
    let half_omega = 0.5 * cfg.omega_c;
    let i = Complex64::i();

    let mut phases = vec![Complex64::new(0.0, 0.0); m];
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(0.0);
    let mut c3_max_sq: f64 = 0.0;

    // layout: [c_n..., C₃, C₂, loss]
    let mut y: Vec<Complex64> = p.amplitudes().to_vec();
    y.extend([Complex64::new(0.0, 0.0); 3]);
    rk4::integrate(
        &mut y,
        steps,
        |t, y, dy| {
            for (ph, &n) in phases.iter_mut().zip(&orders) {
                *ph = Complex64::from_polar(1.0, -n * SimUnits::OMEGA * t);
            }
            let c3 = y[m];
            let c2 = y[m + 1];
            let mut field = Complex64::new(0.0, 0.0);
            for k in 0..m {
                field += y[k] * phases[k];
                dy[k] = i * g * c3 * phases[k].conj();
            }
            dy[m] = -half_gamma * c3 + i * g * field - i * half_omega * c2;
            dy[m + 1] = -i * half_omega * c3;
            dy[m + 2] = Complex64::new(cfg.gamma31 * c3.norm_sqr(), 0.0);
        },
        |y| {
            let c3_sq = y[m].norm_sqr();
            c3_max_sq = c3_max_sq.max(c3_sq);
            trajectory.push(c3_sq);
        },
    );

    let delta_omega = spectral_report(p).delta_omega_std;
    Ok(EitResult {
        loss_numeric: y[m + 2].re,
        loss_adiabatic: adiabatic_loss(p, cfg),
        c3_max_sq,
        survival: y[..m].iter().map(|c| c.norm_sqr()).sum(),
        c2_final_sq: y[m + 1].norm_sqr(),
        c3_final_sq: y[m].norm_sqr(),
        regime_ok: cfg.regime_ok(delta_omega),
        c3_trajectory: trajectory,
    })
}

/// Adiabatic single-atom loss `(16 γ₃₁ g₁₃² / Ω_c⁴) · T · Σ (nω)² |c_n|²`.
pub fn adiabatic_loss(p: &PulseSpectrum, cfg: &EitConfig) -> f64 {
    let second_moment: f64 = p
        .modes()
        .map(|(n, c)| (n as f64 * SimUnits::OMEGA).powi(2) * c.norm_sqr())
        .sum();
    16.0 * cfg.gamma31 * cfg.g13 * cfg.g13 / cfg.omega_c.powi(4) * SimUnits::T * second_moment
}

/// Adiabatic `|C₃(t)|² ≈ (16 g₁₃² / Ω_c⁴) |Σ nω c_n e^{-inωt}|²`, proportional
/// to the squared time derivative of the field envelope at the atom.
pub fn adiabatic_c3_profile(p: &PulseSpectrum, cfg: &EitConfig, t: f64) -> f64 {
    let derivative: Complex64 = p
        .modes()
        .map(|(n, c)| {
            n as f64
                * SimUnits::OMEGA
                * c
                * Complex64::from_polar(1.0, -(n as f64) * SimUnits::OMEGA * t)
        })
        .sum();
    16.0 * cfg.g13 * cfg.g13 / cfg.omega_c.powi(4) * derivative.norm_sqr()
}

/// Width of the EIT transparency window of an optically dense medium,
/// `Ω_c² / sqrt(Γ₃₁ γ₃₁) / sqrt(ρ σ_a l)`.
pub fn transparency_width(cfg: &EitConfig, phys: &MediumPhysical) -> Result<f64> {
    if !(phys.rho_sigma_l > 0.0) {
        return Err(Error::InvalidParameter("optical depth must be > 0".into()));
    }
    let rates = cfg.radiative_gamma31 * cfg.gamma31;
    if !(rates > 0.0) {
        return Err(Error::InvalidParameter(
            "Gamma31·gamma31 must be > 0".into(),
        ));
    }
    Ok(cfg.omega_c * cfg.omega_c / rates.sqrt() / phys.rho_sigma_l.sqrt())
}

/// Total loss `8 (δω_pulse / Δω_trans)²`.
pub fn total_loss_bound(delta_omega_pulse: f64, delta_omega_trans: f64) -> Result<f64> {
    if !(delta_omega_pulse > 0.0 && delta_omega_trans > 0.0) {
        return Err(Error::InvalidParameter(
            "both bandwidths must be positive".into(),
        ));
    }
    Ok(8.0 * (delta_omega_pulse / delta_omega_trans).powi(2))
}

/// Kerr coupling of the four-level scheme, `ε = 4 d₁₃² d₂₄² ρA / (Δ_b Ω_c²)`
/// with `ħ = 1`. `d13_sq_d24_sq` is the product `d₁₃² d₂₄²`.
pub fn giant_kerr_epsilon(
    d13_sq_d24_sq: f64,
    delta_b: f64,
    omega_c: f64,
    rho_a: f64,
) -> Result<f64> {
    if delta_b == 0.0 {
        return Err(Error::InvalidParameter(
            "detuning Delta_b must be nonzero".into(),
        ));
    }
    if omega_c == 0.0 {
        return Err(Error::InvalidParameter("Omega_c must be nonzero".into()));
    }
    Ok(4.0 * d13_sq_d24_sq * rho_a / (delta_b * omega_c * omega_c))
}

/// The far-detuned condition `|Δ_b| ≫ γ₄` behind [`giant_kerr_epsilon`].
pub fn kerr_detuning_ok(delta_b: f64, gamma4: f64) -> bool {
    delta_b.abs() >= REGIME_FACTOR * gamma4
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub epsilon0: f64,
    pub hbar: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        epsilon0: 8.854_187_812_8e-12,
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
    };

    pub const UNIT: PhysicalConstants = PhysicalConstants {
        epsilon0: 1.0,
        hbar: 1.0,
        c: 1.0,
    };
}

/// Radiative rate `Γ₃₁ = ω₀³ d₁₃² / (3π ε₀ ħ c³)`.
pub fn gamma31_from_dipole(omega0: f64, d13: f64, constants: &PhysicalConstants) -> f64 {
    omega0.powi(3) * d13 * d13
        / (3.0 * PI * constants.epsilon0 * constants.hbar * constants.c.powi(3))
}

/// On-resonance absorption cross-section `3λ²/2π`.
pub fn absorption_cross_section(wavelength: f64) -> f64 {
    3.0 * wavelength * wavelength / (2.0 * PI)
}

/// `g₁₃` in simulation units from `Γ₃₁` and `σ_a/A`, using `Γ₃₁ σ_a / A = 2 g₁₃²`.
pub fn g13_from_medium(radiative_gamma31: f64, sigma_a_over_a: f64) -> f64 {
    (0.5 * radiative_gamma31 * sigma_a_over_a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{make_pulse, PulseShape};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn cfg() -> EitConfig {
        EitConfig {
            g13: 10.0,
            omega_c: 2000.0,
            gamma31: 1000.0,
            radiative_gamma31: 1000.0,
            steps: 20_000,
        }
    }

    #[test]
    fn no_coupling_no_loss() {
        let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
        let res = evolve_atom(&p, &EitConfig { g13: 0.0, ..cfg() }).unwrap();
        assert_eq!(res.loss_numeric, 0.0);
        assert_abs_diff_eq!(res.survival, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn stiffness_guard_trips() {
        let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
        let err = evolve_atom(
            &p,
            &EitConfig {
                steps: 2000,
                ..cfg()
            },
        )
        .unwrap_err();
        match err {
            Error::Stiffness { min_steps, .. } => assert_eq!(min_steps, 20_000),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adiabatic_loss_scaling() {
        let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
        let base = adiabatic_loss(&p, &cfg());
        assert_relative_eq!(
            adiabatic_loss(&p, &EitConfig { g13: 20.0, ..cfg() }),
            4.0 * base,
            max_relative = 1e-14
        );
        assert_eq!(adiabatic_loss(&PulseSpectrum::single_mode(8), &cfg()), 0.0);
        // Direct evaluation of the formula.
        let direct: f64 = p
            .modes()
            .map(|(n, c)| (2.0 * PI * n as f64).powi(2) * c.norm_sqr())
            .sum::<f64>()
            * 16.0
            * 1000.0
            * 100.0
            / 2000f64.powi(4);
        assert_relative_eq!(base, direct, max_relative = 1e-14);
    }

    #[test]
    fn single_mode_profile_vanishes() {
        let p = PulseSpectrum::single_mode(4);
        for t in [0.0, 0.3, 0.75] {
            assert_eq!(adiabatic_c3_profile(&p, &cfg(), t), 0.0);
        }
    }

    #[test]
    fn transparency_width_formula() {
        let c = EitConfig {
            omega_c: 10.0,
            gamma31: 1.0,
            radiative_gamma31: 1.0,
            ..cfg()
        };
        let phys = MediumPhysical {
            rho_sigma_l: 100.0,
            sigma_a_over_a: 1.0,
            n_atoms: 100.0,
        };
        assert_relative_eq!(
            transparency_width(&c, &phys).unwrap(),
            10.0,
            max_relative = 1e-15
        );
        let deep = MediumPhysical {
            rho_sigma_l: 400.0,
            ..phys
        };
        assert_relative_eq!(
            transparency_width(&c, &deep).unwrap(),
            5.0,
            max_relative = 1e-15
        );
        let strong = EitConfig { omega_c: 20.0, ..c };
        assert_relative_eq!(
            transparency_width(&strong, &phys).unwrap(),
            40.0,
            max_relative = 1e-15
        );
        assert!(transparency_width(
            &c,
            &MediumPhysical {
                rho_sigma_l: 0.0,
                ..phys
            }
        )
        .is_err());
    }

    #[test]
    fn loss_bound_values() {
        assert_relative_eq!(
            total_loss_bound(1.0, 8f64.sqrt()).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(total_loss_bound(0.0, 1.0).is_err());
        let r: f64 = 0.4;
        assert_abs_diff_eq!(2.0 * r * r / PI, 0.102, epsilon = 0.001);
    }

    #[test]
    fn kerr_epsilon() {
        assert_eq!(giant_kerr_epsilon(1.0, 1.0, 1.0, 1.0).unwrap(), 4.0);
        let a = giant_kerr_epsilon(2.0, 3.0, 5.0, 7.0).unwrap();
        assert_relative_eq!(
            giant_kerr_epsilon(2.0, 3.0, 10.0, 7.0).unwrap(),
            a / 4.0,
            max_relative = 1e-15
        );
        assert_eq!(giant_kerr_epsilon(2.0, -3.0, 5.0, 7.0).unwrap(), -a);
        assert!(giant_kerr_epsilon(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(kerr_detuning_ok(100.0, 1.0));
        assert!(!kerr_detuning_ok(2.0, 1.0));
    }

    #[test]
    fn gamma31_formula() {
        let u = PhysicalConstants::UNIT;
        assert_eq!(gamma31_from_dipole(1.0, 0.0, &u), 0.0);
        assert_relative_eq!(
            gamma31_from_dipole(1.0, 1.0, &u),
            1.0 / (3.0 * PI),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gamma31_from_dipole(2.0, 0.3, &u),
            8.0 * gamma31_from_dipole(1.0, 0.3, &u),
            max_relative = 1e-15
        );
        // Rubidium D2-like numbers land in the 10⁷ s⁻¹ range.
        let omega0 = 2.0 * PI * PhysicalConstants::SI.c / 780e-9;
        let rate = gamma31_from_dipole(omega0, 3.58e-29, &PhysicalConstants::SI);
        assert!(rate > 1e7 && rate < 1e8, "{rate}");
    }

    #[test]
    fn per_atom_loss_times_atoms_matches_bound() {
        // Γσ_a/A = 2g² ties the single-atom estimate to 8(δω/Δω_trans)².
        let p = make_pulse(PulseShape::Gaussian, 0.05, 0.25, 10).unwrap();
        let phys = MediumPhysical::from_atoms(5.0e4, 2.0e-3);
        let c = EitConfig {
            g13: g13_from_medium(400.0, phys.sigma_a_over_a),
            radiative_gamma31: 400.0,
            gamma31: 1000.0,
            ..cfg()
        };
        let total = adiabatic_loss(&p, &c) * phys.n_atoms;
        let bound = total_loss_bound(
            spectral_report(&p).delta_omega_std,
            transparency_width(&c, &phys).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(total, bound, max_relative = 1e-12);
    }
}
