//! Joint two-photon state `Σ c_nm |1_n⟩_a |1_m⟩_b` in interaction-picture
//! amplitudes (free phases `e^{-2πi(n+m)t}` factored out).

use num_complex::Complex64;

use crate::modes::PulseSpectrum;
use crate::units::mode_count;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonState {
    n_max: usize,
    /// Row-major `M × M`, row index `n + n_max`, column index `m + n_max`.
    amplitudes: Vec<Complex64>,
}

impl TwoPhotonState {
    pub fn zeros(n_max: usize) -> Self {
        let m = mode_count(n_max);
        TwoPhotonState {
            n_max,
            amplitudes: vec![Complex64::new(0.0, 0.0); m * m],
        }
    }

    /// `c_nm = a_n b_m`.
    pub fn product(a: &PulseSpectrum, b: &PulseSpectrum) -> Result<Self> {
        if a.n_max() != b.n_max() {
            return Err(Error::GridMismatch {
                left: a.n_max(),
                right: b.n_max(),
            });
        }
        let amplitudes = a
            .amplitudes()
            .iter()
            .flat_map(|&ca| b.amplitudes().iter().map(move |&cb| ca * cb))
            .collect();
        Ok(TwoPhotonState {
            n_max: a.n_max(),
            amplitudes,
        })
    }

    /// Builds a state from a row-major `M × M` amplitude matrix (not normalized).
    pub fn from_matrix(n_max: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let m = mode_count(n_max);
        if amplitudes.len() != m * m {
            return Err(Error::InvalidParameter(format!(
                "expected {} amplitudes, got {}",
                m * m,
                amplitudes.len()
            )));
        }
        Ok(TwoPhotonState { n_max, amplitudes })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn mode_count(&self) -> usize {
        mode_count(self.n_max)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    fn index(&self, n: i64, m: i64) -> Option<usize> {
        let k = self.n_max as i64;
        if n.abs() > k || m.abs() > k {
            return None;
        }
        Some(((n + k) as usize) * self.mode_count() + (m + k) as usize)
    }

    /// `c_nm`, zero outside the grid.
    pub fn get(&self, n: i64, m: i64) -> Complex64 {
        self.index(n, m)
            .map_or(Complex64::new(0.0, 0.0), |i| self.amplitudes[i])
    }

    pub fn set(&mut self, n: i64, m: i64, value: Complex64) -> Result<()> {
        let i = self.index(n, m).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "mode pair ({n}, {m}) outside n_max = {}",
                self.n_max
            ))
        })?;
        self.amplitudes[i] = value;
        Ok(())
    }

    /// `c_{νμ} = c_nm` with `n = (μ+ν)/2`, `m = (μ−ν)/2`.
    pub fn get_nu_mu(&self, nu: i64, mu: i64) -> Result<Complex64> {
        if (nu - mu).rem_euclid(2) != 0 {
            return Err(Error::ParityMismatch { nu, mu });
        }
        Ok(self.get((mu + nu) / 2, (mu - nu) / 2))
    }

    /// `(n, m, c_nm)` for every grid pair.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let k = self.n_max as i64;
        let m = self.mode_count();
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, &c)| ((i / m) as i64 - k, (i % m) as i64 - k, c))
    }

    /// `v_μ = Σ_ν c_{νμ}`, for `μ = -2·n_max..=2·n_max` (index 0 is `μ = -2·n_max`).
    pub fn v_mu(&self) -> Vec<Complex64> {
        let m = self.mode_count();
        let mut v = vec![Complex64::new(0.0, 0.0); 2 * m - 1];
        for (i, &c) in self.amplitudes.iter().enumerate() {
            v[i / m + i % m] += c;
        }
        v
    }

    /// `(1/M) Σ_μ |v_μ|²`.
    pub fn r(&self) -> f64 {
        self.v_mu().iter().map(|v| v.norm_sqr()).sum::<f64>() / self.mode_count() as f64
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ c*_nm(reference) c_nm(self)`.
    ///
    /// At `t = T` the free-evolution phases are all 1, so this is the physical
    /// overlap `⟨reference|self⟩`.
    pub fn overlap_with(&self, reference: &TwoPhotonState) -> Result<Complex64> {
        if self.n_max != reference.n_max {
            return Err(Error::GridMismatch {
                left: self.n_max,
                right: reference.n_max,
            });
        }
        Ok(reference
            .amplitudes
            .iter()
            .zip(&self.amplitudes)
            .map(|(r, c)| r.conj() * c)
            .sum())
    }

    /// Largest `|c_nm − c_mn|`.
    pub fn exchange_asymmetry(&self) -> f64 {
        self.pairs()
            .map(|(n, m, c)| (c - self.get(m, n)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise `|c_nm − other_nm|`.
    pub fn max_abs_diff(&self, other: &TwoPhotonState) -> Result<f64> {
        if self.n_max != other.n_max {
            return Err(Error::GridMismatch {
                left: self.n_max,
                right: other.n_max,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{make_pulse, spectral_report, PulseShape};
    use approx::assert_abs_diff_eq;

    #[test]
    fn overlap_of_state_with_itself_is_one() {
        let p = make_pulse(PulseShape::Gaussian, 0.078, 0.25, 6).unwrap();
        let s = TwoPhotonState::product(&p, &p).unwrap();
        let o = s.overlap_with(&s).unwrap();
        assert_abs_diff_eq!(o.re, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(o.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn disjoint_states_are_orthogonal() {
        let mut a = TwoPhotonState::zeros(2);
        let mut b = TwoPhotonState::zeros(2);
        a.set(1, -1, Complex64::new(1.0, 0.0)).unwrap();
        b.set(-2, 0, Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(a.overlap_with(&b).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = TwoPhotonState::zeros(2);
        let b = TwoPhotonState::zeros(3);
        assert!(matches!(
            a.overlap_with(&b),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn nu_mu_view() {
        let mut s = TwoPhotonState::zeros(2);
        s.set(2, -1, Complex64::new(0.5, 0.0)).unwrap();
        // μ = 1, ν = 3
        assert_eq!(s.get_nu_mu(3, 1).unwrap(), Complex64::new(0.5, 0.0));
        assert!(matches!(
            s.get_nu_mu(2, 1),
            Err(Error::ParityMismatch { .. })
        ));
        assert_eq!(s.get_nu_mu(5, 1).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn matrix_v_mu_matches_pair_sums() {
        let p = make_pulse(PulseShape::Sech, 0.07, 0.4, 6).unwrap();
        let s = TwoPhotonState::product(&p, &p).unwrap();
        assert_abs_diff_eq!(s.r(), spectral_report(&p).r, epsilon = 1e-14);
        assert!(s.exchange_asymmetry() < 1e-16);
    }
}
