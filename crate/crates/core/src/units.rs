//! Simulation units: quantization length `L = 1` and `c = 1`.

use std::f64::consts::PI;

/// Convention record for the simulation units. Everything in the crate is
/// expressed in these units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimUnits;

impl SimUnits {
    /// Quantization length.
    pub const L: f64 = 1.0;
    /// Speed of light.
    pub const C: f64 = 1.0;
    /// Quantization time `L/c`; a free pulse returns to itself after `T`.
    pub const T: f64 = Self::L / Self::C;
    /// Fundamental mode spacing `2πc/L`.
    pub const OMEGA: f64 = 2.0 * PI * Self::C / Self::L;
}

/// Number of modes `2·n_max + 1`.
pub fn mode_count(n_max: usize) -> usize {
    2 * n_max + 1
}
