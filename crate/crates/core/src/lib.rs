//! Two single-photon wavepackets crossing a localized, instantaneous Kerr
//! medium, simulated in the Schrödinger picture.
//!
//! The crate is organised by capability:
//!
//! - [`modes`]: pulse spectra on a finite traveling-wave mode grid, the
//!   spectral overlap parameter `r`, bandwidth measures and the locality
//!   diagnostic.
//! - [`state`]: the joint two-photon amplitude matrix `c_nm` with its
//!   sum/difference (`μ`, `ν`) views.
//! - [`analytic`]: the closed-form final state, fidelity and phase under the
//!   delta-kernel approximation, plus the nonlocal toy gate.
//! - [`dynamics`]: exact fixed-step RK4 integration of the two-photon
//!   equations of motion.
//! - [`eit`]: the four-level giant-Kerr atom, its absorption of a single
//!   photon wavepacket and the resulting loss bound.
//! - [`experiments`]: reproducible sweeps and CSV/report emission used by the
//!   `kerr-sim` binary.
//!
//! All quantities are dimensionless in the simulation units of [`units`]
//! (quantization length `L = 1`, `c = 1`).

// `!(x > 0.0)` is used on purpose so NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod dynamics;
pub mod eit;
mod error;
pub mod experiments;
pub mod modes;
mod rk4;
pub mod state;
pub mod units;

pub use analytic::{fidelity_phase, GateResult, GateSource, MediumConfig};
pub use dynamics::{evolve, EvolutionConfig, Method};
pub use eit::{EitConfig, EitResult, MediumPhysical};
pub use error::{Error, Result};
pub use modes::{make_pulse, spectral_report, PulseShape, PulseSpectrum, SpectralReport};
pub use state::TwoPhotonState;

pub use num_complex::Complex64;
