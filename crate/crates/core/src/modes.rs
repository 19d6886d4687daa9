//! Single-photon pulse spectra on the `M = 2·n_max + 1` mode grid.
//!
//! A pulse is stored as its mode amplitudes `c_n`, `n = -n_max..=n_max`, so
//! that the spatial amplitude envelope is `ψ(z) = Σ c_n e^{2πinz}` and the
//! intensity is `|ψ(z)|²` (normalized to unit integral over one period).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::MediumConfig;
use crate::units::{mode_count, SimUnits};
use crate::{Error, Result};

/// Uniform samples per period used for the coefficient quadrature.
pub const QUADRATURE_SAMPLES: usize = 8192;

/// Edge-mode weight, relative to the strongest mode, above which a pulse is
/// considered not to fit in the mode grid.
pub const CONTAINMENT_THRESHOLD: f64 = 1e-3;

/// Relative threshold on `|P(k)|²` defining the effective spectral support.
pub const SUPPORT_THRESHOLD: f64 = 1e-3;

/// Tolerance on `Σ|c_n|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseShape {
    /// Intensity `exp(-(z - z1)²/σ²)`.
    Gaussian,
    /// Intensity `sech((z - z1)/σ)`.
    Sech,
    /// Flat-top intensity of full width `σ` centred on `z1`.
    Square,
    /// Amplitudes given directly.
    Custom,
}

impl PulseShape {
    /// Intensity profile at signed distance `d` from the pulse centre.
    pub fn intensity(self, d: f64, sigma: f64) -> f64 {
        match self {
            PulseShape::Gaussian => (-(d * d) / (sigma * sigma)).exp(),
            PulseShape::Sech => 1.0 / (d / sigma).cosh(),
            PulseShape::Square => {
                if d.abs() < 0.5 * sigma {
                    1.0
                } else {
                    0.0
                }
            }
            PulseShape::Custom => f64::NAN,
        }
    }

    /// Amplitude envelope, the square root of [`PulseShape::intensity`].
    pub fn amplitude(self, d: f64, sigma: f64) -> f64 {
        match self {
            PulseShape::Gaussian => (-(d * d) / (2.0 * sigma * sigma)).exp(),
            _ => self.intensity(d, sigma).sqrt(),
        }
    }

    /// Closed-form `L∫I²/(∫I)²` for a well-localized pulse of width `σ`.
    pub fn closed_form_v_sum(self, sigma: f64) -> Option<f64> {
        match self {
            PulseShape::Gaussian => Some(1.0 / (sigma * (2.0 * PI).sqrt())),
            PulseShape::Sech => Some(2.0 / (PI * PI * sigma)),
            PulseShape::Square => Some(1.0 / sigma),
            PulseShape::Custom => None,
        }
    }
}

/// Shortest signed distance from `z1` to `z` on the unit circle, in `[-1/2, 1/2)`.
pub fn wrapped_distance(z: f64, z1: f64) -> f64 {
    let d = (z - z1).rem_euclid(1.0);
    if d >= 0.5 {
        d - 1.0
    } else {
        d
    }
}

/// Normalized mode amplitudes of one single-photon wavepacket.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpectrum {
    n_max: usize,
    amplitudes: Vec<Complex64>,
    shape: PulseShape,
    sigma: Option<f64>,
    z1: Option<f64>,
}

impl PulseSpectrum {
    /// Builds a spectrum from raw amplitudes (index 0 is `n = -n_max`),
    /// normalizing them. No containment check is applied.
    pub fn custom(n_max: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != mode_count(n_max) {
            return Err(Error::InvalidParameter(format!(
                "expected {} amplitudes for n_max = {n_max}, got {}",
                mode_count(n_max),
                amplitudes.len()
            )));
        }
        let mut spectrum = PulseSpectrum {
            n_max,
            amplitudes,
            shape: PulseShape::Custom,
            sigma: None,
            z1: None,
        };
        spectrum.normalize()?;
        Ok(spectrum)
    }

    /// Spectrum with all weight in mode `n = 0`.
    pub fn single_mode(n_max: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); mode_count(n_max)];
        amplitudes[n_max] = Complex64::new(1.0, 0.0);
        PulseSpectrum {
            n_max,
            amplitudes,
            shape: PulseShape::Custom,
            sigma: None,
            z1: None,
        }
    }

    fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter(
                "spectrum has zero or non-finite norm".into(),
            ));
        }
        for c in &mut self.amplitudes {
            *c /= norm;
        }
        Ok(())
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn mode_count(&self) -> usize {
        mode_count(self.n_max)
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    pub fn z1(&self) -> Option<f64> {
        self.z1
    }

    /// Amplitudes ordered from `n = -n_max` to `n = n_max`.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of mode `n`, zero outside the grid.
    pub fn amplitude(&self, n: i64) -> Complex64 {
        let idx = n + self.n_max as i64;
        if idx < 0 || idx >= self.amplitudes.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.amplitudes[idx as usize]
        }
    }

    /// `(n, c_n)` pairs.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n_max = self.n_max as i64;
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - n_max, c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Amplitude envelope `Σ c_n e^{2πinz}`.
    pub fn envelope_at(&self, z: f64) -> Complex64 {
        self.modes()
            .map(|(n, c)| c * Complex64::from_polar(1.0, 2.0 * PI * n as f64 * z))
            .sum()
    }

    /// Intensity `|Σ c_n e^{2πinz}|²`; integrates to one over a period.
    pub fn intensity_at(&self, z: f64) -> f64 {
        self.envelope_at(z).norm_sqr()
    }

    /// Intensity on `samples` uniform points of `[0, 1)`.
    pub fn sample_intensity(&self, samples: usize) -> Vec<f64> {
        (0..samples)
            .map(|k| self.intensity_at(k as f64 / samples as f64))
            .collect()
    }

    /// Fourier coefficients `p_j = Σ_n c_n c*_{n-j}` of the intensity,
    /// for `j = -2·n_max..=2·n_max`.
    pub fn intensity_fourier(&self) -> Vec<Complex64> {
        let n_max = self.n_max as i64;
        (-2 * n_max..=2 * n_max)
            .map(|j| {
                self.modes()
                    .map(|(n, c)| c * self.amplitude(n - j).conj())
                    .sum()
            })
            .collect()
    }

    /// Largest `|c_{±n_max}|²` relative to the strongest mode.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self
            .amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .fold(0.0, f64::max);
        let first = self.amplitudes.first().map_or(0.0, |c| c.norm_sqr());
        let last = self.amplitudes.last().map_or(0.0, |c| c.norm_sqr());
        first.max(last) / peak
    }

    /// Fails with [`Error::NotContained`] when the edge modes carry more than
    /// [`CONTAINMENT_THRESHOLD`] of the peak weight.
    pub fn check_containment(&self) -> Result<()> {
        let edge_ratio = self.edge_ratio();
        if edge_ratio > CONTAINMENT_THRESHOLD {
            return Err(Error::NotContained {
                n_max: self.n_max,
                edge_ratio,
                threshold: CONTAINMENT_THRESHOLD,
            });
        }
        Ok(())
    }
}

/// Builds a normalized pulse spectrum from an intensity shape.
///
/// The amplitude envelope `sqrt(I(z))` is periodized on `[0, 1)` and its
/// Fourier coefficients are taken by the trapezoid rule on
/// [`QUADRATURE_SAMPLES`] points.
pub fn make_pulse(shape: PulseShape, sigma: f64, z1: f64, n_max: usize) -> Result<PulseSpectrum> {
    if shape == PulseShape::Custom {
        return Err(Error::InvalidParameter(
            "custom spectra are built with PulseSpectrum::custom".into(),
        ));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be > 0, got {sigma}"
        )));
    }
    if !(0.0..1.0).contains(&z1) {
        return Err(Error::InvalidParameter(format!(
            "z1 must lie in [0, 1), got {z1}"
        )));
    }
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }

    let samples = QUADRATURE_SAMPLES;
    let envelope: Vec<f64> = (0..samples)
        .map(|k| shape.amplitude(wrapped_distance(k as f64 / samples as f64, z1), sigma))
        .collect();

    let n_max_i = n_max as i64;
    let amplitudes = (-n_max_i..=n_max_i)
        .map(|n| {
            let sum: Complex64 = envelope
                .iter()
                .enumerate()
                .map(|(k, &a)| {
                    let z = k as f64 / samples as f64;
                    a * Complex64::from_polar(1.0, -2.0 * PI * n as f64 * z)
                })
                .sum();
            sum / samples as f64
        })
        .collect();

    let mut pulse = PulseSpectrum {
        n_max,
        amplitudes,
        shape,
        sigma: Some(sigma),
        z1: Some(z1),
    };
    pulse.normalize()?;
    pulse.check_containment()?;
    Ok(pulse)
}

/// Smallest `n_max` whose mode count `M` is at least `L/σ`: the fewest modes
/// that still describe a localized pulse of width `σ`.
pub fn minimal_n_max(sigma: f64) -> usize {
    let m = (SimUnits::L / sigma).ceil().max(1.0) as usize;
    m / 2
}

/// Pair sums `v_μ = Σ_{n+m=μ} a_n b_m` for `μ = -(na+nb)..=(na+nb)`.
pub fn pair_sums(a: &PulseSpectrum, b: &PulseSpectrum) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); a.amplitudes.len() + b.amplitudes.len() - 1];
    for (i, &ca) in a.amplitudes.iter().enumerate() {
        for (j, &cb) in b.amplitudes.iter().enumerate() {
            v[i + j] += ca * cb;
        }
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralReport {
    /// `(1/M) Σ_μ |v_μ(0)|²` for two copies of the pulse.
    pub r: f64,
    pub v_mu_sq_sum: f64,
    /// Mean `Σ nω |c_n|²`; zero for symmetric spectra.
    pub mean_omega: f64,
    /// `sqrt(Σ (nω)² |c_n|²)`.
    pub delta_omega_std: f64,
    /// Width of the symmetric frequency window holding every intensity
    /// Fourier component with `|P(k)|² ≥ 10⁻³ |P(0)|²`, counted in whole
    /// mode bins.
    pub delta_omega_support: f64,
    /// `delta_omega_support / (M ω)`.
    pub bound_ratio: f64,
}

/// Spectral overlap parameter and bandwidth measures of a pulse.
pub fn spectral_report(p: &PulseSpectrum) -> SpectralReport {
    let m = p.mode_count() as f64;
    let omega = SimUnits::OMEGA;

    let v_mu_sq_sum: f64 = pair_sums(p, p).iter().map(|v| v.norm_sqr()).sum();

    let mean_omega = p
        .modes()
        .map(|(n, c)| n as f64 * omega * c.norm_sqr())
        .sum();
    let delta_omega_std = p
        .modes()
        .map(|(n, c)| (n as f64 * omega).powi(2) * c.norm_sqr())
        .sum::<f64>()
        .sqrt();

    let fourier = p.intensity_fourier();
    let centre = 2 * p.n_max();
    let p0 = fourier[centre].norm_sqr();
    let j_max = fourier
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm_sqr() >= SUPPORT_THRESHOLD * p0)
        .map(|(i, _)| (i as i64 - centre as i64).unsigned_abs())
        .max()
        .unwrap_or(0);
    let delta_omega_support = (2 * j_max + 1) as f64 * omega;

    SpectralReport {
        r: v_mu_sq_sum / m,
        v_mu_sq_sum,
        mean_omega,
        delta_omega_std,
        delta_omega_support,
        bound_ratio: delta_omega_support / (m * omega),
    }
}

/// `r` from a sampled intensity on `[0, 1)`: `(1/M)·L∫I²/(∫I)²`.
pub fn r_from_intensity(intensity: &[f64], m: usize) -> Result<f64> {
    if intensity.len() < 1024 {
        return Err(Error::InvalidParameter(format!(
            "need at least 1024 intensity samples, got {}",
            intensity.len()
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "mode count must be positive".into(),
        ));
    }
    if intensity.iter().any(|&i| !i.is_finite() || i < 0.0) {
        return Err(Error::InvalidParameter(
            "intensity must be finite and non-negative".into(),
        ));
    }
    let n = intensity.len() as f64;
    // Periodic trapezoid rule reduces to the sample mean.
    let mean = intensity.iter().sum::<f64>() / n;
    if mean == 0.0 {
        return Err(Error::ZeroIntegral);
    }
    let mean_sq = intensity.iter().map(|i| i * i).sum::<f64>() / n;
    Ok(SimUnits::L * mean_sq / (mean * mean) / m as f64)
}

/// `η ∫_{z0}^{z0+l} I_a(z) I_b(z) dz`, the interaction energy of the two
/// pulses with the medium (zero when either pulse is outside it).
pub fn interaction_energy(pa: &PulseSpectrum, pb: &PulseSpectrum, medium: &MediumConfig) -> f64 {
    let fa = pa.intensity_fourier();
    let fb = pb.intensity_fourier();
    let ja = 2 * pa.n_max() as i64;
    let jb = 2 * pb.n_max() as i64;
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &a) in fa.iter().enumerate() {
        for (k, &b) in fb.iter().enumerate() {
            let freq = (i as i64 - ja) + (k as i64 - jb);
            total += a * b * medium.segment_integral(freq);
        }
    }
    medium.eta * total.re
}
