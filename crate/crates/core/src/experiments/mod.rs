//! Reproducible experiments behind the `kerr-sim` binary.
//!
//! Every runner returns plain rows; [`run`] renders them as CSV. Sweep points
//! are evaluated on a rayon pool of [`RunConfig::jobs`] workers and the rows
//! are sorted by their sweep key before rendering, so the output bytes never
//! depend on scheduling.

mod config;
pub mod csv;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

pub use config::{Experiment, RunConfig, JOBS_ENV, MAX_N_MAX};

use crate::analytic::fidelity_phase;
use crate::dynamics::numeric_gate;
use crate::eit::{evolve_atom, total_loss_bound};
use crate::modes::{
    interaction_energy, make_pulse, r_from_intensity, spectral_report, PulseShape,
    QUADRATURE_SAMPLES,
};
use crate::units::SimUnits;
use crate::{Error, Result};

/// Overlap parameters of the analytic curves.
pub const FIG1_CURVES: [f64; 3] = [0.2, 0.3, 0.4];
/// Samples of each analytic curve over `Φ ∈ [0, 2π]`.
pub const FIG1_CURVE_POINTS: usize = 101;
/// Gaussian widths of the numeric dots and the curve each belongs to.
pub const FIG1_PULSES: [(f64, f64); 2] = [(0.059, 0.4), (0.078, 0.3)];
pub const FIG1_N_MAX: usize = 8;
pub const FIG1_Z1: f64 = 0.25;

pub const GATE_HEADER: [&str; 7] = [
    "Phi",
    "r",
    "F0_analytic",
    "phi_analytic",
    "F0_numeric",
    "phi_numeric",
    "norm_error",
];

pub const EIT_HEADER: [&str; 6] = [
    "sigma",
    "delta_omega",
    "loss_numeric",
    "loss_adiabatic",
    "ratio",
    "regime_ok",
];

/// `n` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..n)
            .map(|k| min + (max - min) * (k as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// `n` log-spaced points from `min` to `max` inclusive.
pub fn logspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    linspace(min.ln(), max.ln(), n)
        .into_iter()
        .map(f64::exp)
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn par_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| items.into_par_iter().map(f).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericColumns {
    pub f0: f64,
    pub phase: f64,
    pub norm_error: f64,
}

/// One `(Φ, r)` point: analytic prediction and, for simulated points, the
/// numeric result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateRow {
    pub phi_bare: f64,
    pub r: f64,
    pub f0_analytic: f64,
    pub phi_analytic: f64,
    pub numeric: Option<NumericColumns>,
}

impl GateRow {
    fn analytic(phi_bare: f64, r: f64) -> Self {
        let g = fidelity_phase(phi_bare, r);
        GateRow {
            phi_bare,
            r,
            f0_analytic: g.fidelity_f0,
            phi_analytic: g.phase_phi,
            numeric: None,
        }
    }

    fn sort_key(&self) -> (bool, f64, f64) {
        (self.numeric.is_some(), self.r, self.phi_bare)
    }
}

fn sort_gate_rows(rows: &mut [GateRow]) {
    rows.sort_by(|a, b| {
        let (ka, kb) = (a.sort_key(), b.sort_key());
        ka.0.cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
    });
}

pub fn gate_rows_csv(rows: &[GateRow]) -> String {
    let mut table = csv::Table::new(&GATE_HEADER);
    for row in rows {
        let n = row.numeric;
        table.row([
            csv::number(row.phi_bare),
            csv::number(row.r),
            csv::number(row.f0_analytic),
            csv::number(row.phi_analytic),
            csv::optional(n.map(|n| n.f0)),
            csv::optional(n.map(|n| n.phase)),
            csv::optional(n.map(|n| n.norm_error)),
        ]);
    }
    table.finish()
}

fn phi_max(cfg: &RunConfig) -> f64 {
    cfg.phi_max.unwrap_or(PI)
}

/// Analytic curves at `r ∈ {0.2, 0.3, 0.4}` for `Φ ∈ [0, 2π]`, plus numeric
/// dots for the two reference gaussian pulses (`M = 17`, `z1 = L/4`).
///
/// Numeric rows carry the nominal `r` of the curve they are drawn against;
/// their analytic columns are that curve.
pub fn run_fig1(cfg: &RunConfig) -> Result<Vec<GateRow>> {
    cfg.validate()?;
    let mut rows: Vec<GateRow> = FIG1_CURVES
        .iter()
        .flat_map(|&r| {
            linspace(0.0, 2.0 * PI, FIG1_CURVE_POINTS)
                .into_iter()
                .map(move |phi| GateRow::analytic(phi, r))
        })
        .collect();

    let evolution = cfg.evolution();
    let mut tasks = Vec::new();
    for &(sigma, nominal_r) in &FIG1_PULSES {
        let pulse = make_pulse(PulseShape::Gaussian, sigma, FIG1_Z1, FIG1_N_MAX)?;
        for phi in linspace(cfg.phi_min, phi_max(cfg), cfg.points) {
            tasks.push((pulse.clone(), nominal_r, phi));
        }
    }
    let numeric = par_map(cfg.jobs(), tasks, |(pulse, nominal_r, phi)| {
        let medium = cfg.medium_with_phi(phi, FIG1_N_MAX)?;
        let gate = numeric_gate(&pulse, &pulse, &medium, &evolution)?;
        Ok(GateRow {
            numeric: Some(NumericColumns {
                f0: gate.result.fidelity_f0,
                phase: gate.result.phase_phi,
                norm_error: gate.norm_error,
            }),
            ..GateRow::analytic(phi, nominal_r)
        })
    })?;
    rows.extend(numeric);
    sort_gate_rows(&mut rows);
    Ok(rows)
}

/// Numeric `Φ` sweep for the configured pulse, compared against the analytic
/// prediction at the pulse's own `r`.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<GateRow>> {
    cfg.validate()?;
    let n_max = cfg.n_max_for(cfg.sigma);
    let pulse = make_pulse(cfg.shape, cfg.sigma, cfg.z1_for(Experiment::Sweep), n_max)?;
    let r = spectral_report(&pulse).r;
    let evolution = cfg.evolution();
    let mut rows = par_map(
        cfg.jobs(),
        linspace(cfg.phi_min, phi_max(cfg), cfg.points),
        |phi| {
            let medium = cfg.medium_with_phi(phi, n_max)?;
            let gate = numeric_gate(&pulse, &pulse, &medium, &evolution)?;
            Ok(GateRow {
                numeric: Some(NumericColumns {
                    f0: gate.result.fidelity_f0,
                    phase: gate.result.phase_phi,
                    norm_error: gate.norm_error,
                }),
                ..GateRow::analytic(phi, r)
            })
        },
    )?;
    sort_gate_rows(&mut rows);
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EitRow {
    pub sigma: f64,
    pub delta_omega: f64,
    pub loss_numeric: f64,
    pub loss_adiabatic: f64,
    pub ratio: f64,
    pub regime_ok: bool,
}

/// Single-atom absorption for gaussian pulses with `σ` log-spaced over
/// `[sigma_min, sigma_max]`.
pub fn run_eit_loss(cfg: &RunConfig) -> Result<Vec<EitRow>> {
    cfg.validate()?;
    let eit = cfg.eit();
    eit.validate()?;
    let z1 = cfg.z1_for(Experiment::EitLoss);
    let sigmas = logspace(cfg.sigma_min, cfg.sigma_max, cfg.sigma_points);
    let mut rows = par_map(cfg.jobs(), sigmas, |sigma| {
        let pulse = make_pulse(cfg.shape, sigma, z1, cfg.n_max_for(sigma))?;
        let res = evolve_atom(&pulse, &eit)?;
        let ratio = if res.loss_adiabatic > 0.0 {
            res.loss_numeric / res.loss_adiabatic
        } else {
            f64::NAN
        };
        Ok(EitRow {
            sigma,
            delta_omega: spectral_report(&pulse).delta_omega_std,
            loss_numeric: res.loss_numeric,
            loss_adiabatic: res.loss_adiabatic,
            ratio,
            regime_ok: res.regime_ok,
        })
    })?;
    rows.sort_by(|a, b| a.sigma.total_cmp(&b.sigma));
    Ok(rows)
}

pub fn eit_rows_csv(rows: &[EitRow]) -> String {
    let mut table = csv::Table::new(&EIT_HEADER);
    for row in rows {
        table.row([
            csv::number(row.sigma),
            csv::number(row.delta_omega),
            csv::number(row.loss_numeric),
            csv::number(row.loss_adiabatic),
            if row.ratio.is_nan() {
                String::new()
            } else {
                csv::number(row.ratio)
            },
            row.regime_ok.to_string(),
        ]);
    }
    table.finish()
}

/// Spectral summary of the configured pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RCalcRow {
    pub shape: PulseShape,
    pub sigma: f64,
    pub z1: f64,
    pub n_max: usize,
    pub m: usize,
    pub r: f64,
    pub r_intensity: f64,
    pub r_closed_form: Option<f64>,
    pub delta_omega_std: f64,
    pub delta_omega_support: f64,
    pub bound_ratio: f64,
    pub interaction_energy: f64,
}

pub const R_CALC_HEADER: [&str; 12] = [
    "shape",
    "sigma",
    "z1",
    "n_max",
    "M",
    "r",
    "r_intensity",
    "r_closed_form",
    "delta_omega_std",
    "delta_omega_support",
    "bound_ratio",
    "interaction_energy",
];

pub fn run_r_calc(cfg: &RunConfig) -> Result<RCalcRow> {
    cfg.validate()?;
    let n_max = cfg.n_max_for(cfg.sigma);
    let z1 = cfg.z1_for(Experiment::RCalc);
    let pulse = make_pulse(cfg.shape, cfg.sigma, z1, n_max)?;
    let report = spectral_report(&pulse);
    let m = pulse.mode_count();
    let medium = cfg.medium(n_max)?;
    Ok(RCalcRow {
        shape: cfg.shape,
        sigma: cfg.sigma,
        z1,
        n_max,
        m,
        r: report.r,
        r_intensity: r_from_intensity(&pulse.sample_intensity(QUADRATURE_SAMPLES), m)?,
        r_closed_form: cfg.shape.closed_form_v_sum(cfg.sigma).map(|v| v / m as f64),
        delta_omega_std: report.delta_omega_std,
        delta_omega_support: report.delta_omega_support,
        bound_ratio: report.bound_ratio,
        interaction_energy: interaction_energy(&pulse, &pulse, &medium),
    })
}

pub fn r_calc_csv(row: &RCalcRow) -> String {
    let mut table = csv::Table::new(&R_CALC_HEADER);
    let shape = serde_json::to_value(row.shape)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    table.row([
        shape,
        csv::number(row.sigma),
        csv::number(row.z1),
        row.n_max.to_string(),
        row.m.to_string(),
        csv::number(row.r),
        csv::number(row.r_intensity),
        csv::optional(row.r_closed_form),
        csv::number(row.delta_omega_std),
        csv::number(row.delta_omega_support),
        csv::number(row.bound_ratio),
        csv::number(row.interaction_energy),
    ]);
    table.finish()
}

/// The loss-limited gate budget for a gaussian pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorkedExample {
    pub sigma: f64,
    pub m: usize,
    pub r: f64,
    /// `8 (δω_pulse / Δω_trans)²` with the transparency width taken equal to
    /// the medium bandwidth `Mω`.
    pub p_loss: f64,
    /// `2r²/π`, the gaussian closed form of the same quantity.
    pub p_loss_gaussian: f64,
    /// Infidelity budget `1 − F0`.
    pub infidelity: f64,
    /// Largest `Φ` within the infidelity budget.
    pub phi_bare: f64,
    pub phase_phi: f64,
    /// `cos²(φ/2)`: overlap of the do-nothing operation with the target.
    pub do_nothing_overlap: f64,
}

impl WorkedExample {
    /// Values quoted for this example, in the order of [`WorkedExample::quantities`].
    pub const REFERENCE: [(&'static str, f64); 5] = [
        ("r", 0.4),
        ("P_loss", 0.1),
        ("Phi", 0.66),
        ("phi", 0.26),
        ("do_nothing_overlap", 0.98),
    ];

    pub fn quantities(&self) -> [(&'static str, f64); 5] {
        [
            ("r", self.r),
            ("P_loss", self.p_loss),
            ("Phi", self.phi_bare),
            ("phi", self.phase_phi),
            ("do_nothing_overlap", self.do_nothing_overlap),
        ]
    }
}

pub const WORKED_EXAMPLE_SIGMA: f64 = 0.059;
pub const WORKED_EXAMPLE_INFIDELITY: f64 = 0.1;

/// Gaussian pulse → `r` → loss → largest `Φ` at 10% infidelity → phase →
/// do-nothing overlap.
pub fn run_worked_example() -> Result<WorkedExample> {
    let sigma = WORKED_EXAMPLE_SIGMA;
    let n_max = crate::modes::minimal_n_max(sigma);
    let pulse = make_pulse(PulseShape::Gaussian, sigma, FIG1_Z1, n_max)?;
    let report = spectral_report(&pulse);
    let m = pulse.mode_count();
    let r = report.r;

    let medium_bandwidth = m as f64 * SimUnits::OMEGA;
    let p_loss = total_loss_bound(report.delta_omega_std, medium_bandwidth)?;

    let infidelity = WORKED_EXAMPLE_INFIDELITY;
    let sin_sq = infidelity / (4.0 * r * (1.0 - r));
    if sin_sq > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "infidelity {infidelity} is unreachable at r = {r}"
        )));
    }
    let phi_bare = 2.0 * sin_sq.sqrt().asin();
    let phase_phi = fidelity_phase(phi_bare, r).phase_phi;

    Ok(WorkedExample {
        sigma,
        m,
        r,
        p_loss,
        p_loss_gaussian: 2.0 * r * r / PI,
        infidelity,
        phi_bare,
        phase_phi,
        do_nothing_overlap: (0.5 * phase_phi).cos().powi(2),
    })
}

pub fn worked_example_csv(w: &WorkedExample) -> String {
    let mut table = csv::Table::new(&["quantity", "value", "reference"]);
    for ((name, value), (_, reference)) in w.quantities().iter().zip(WorkedExample::REFERENCE) {
        table.row([
            name.to_string(),
            csv::number(*value),
            csv::number(reference),
        ]);
    }
    table.finish()
}

/// Runs one experiment and renders its CSV.
pub fn run(cfg: &RunConfig, experiment: Experiment) -> Result<String> {
    Ok(match experiment {
        Experiment::Fig1 => gate_rows_csv(&run_fig1(cfg)?),
        Experiment::Sweep => gate_rows_csv(&run_sweep(cfg)?),
        Experiment::EitLoss => eit_rows_csv(&run_eit_loss(cfg)?),
        Experiment::RCalc => r_calc_csv(&run_r_calc(cfg)?),
        Experiment::WorkedExample => worked_example_csv(&run_worked_example()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grids() {
        let g = linspace(0.0, 2.0 * PI, 101);
        assert_eq!(g[50], PI);
        assert_eq!(g[100], 2.0 * PI);
        let l = logspace(0.01, 0.1, 3);
        assert_abs_diff_eq!(l[1], 0.1f64.sqrt() * 0.1, epsilon = 1e-15);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 5.0, 10.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(2.5)).collect();
        assert_abs_diff_eq!(loglog_slope(&xs, &ys), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn worked_example_chain() {
        let w = run_worked_example().unwrap();
        assert_eq!(w.m, 17);
        assert_abs_diff_eq!(w.phi_bare, 0.657, epsilon = 0.01);
        assert_abs_diff_eq!(w.phase_phi, 0.260, epsilon = 0.005);
        assert_abs_diff_eq!(w.do_nothing_overlap, 0.983, epsilon = 0.002);
        assert_abs_diff_eq!(
            1.0 - fidelity_phase(w.phi_bare, w.r).fidelity_f0,
            0.1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn r_calc_consistency() {
        let row = run_r_calc(&RunConfig::default()).unwrap();
        assert_eq!(row.m, 17);
        assert!((row.r - row.r_intensity).abs() / row.r < 0.02);
        assert!((row.r - row.r_closed_form.unwrap()).abs() < 0.01);
    }

    #[test]
    fn zero_coupling_eit_rows() {
        let cfg = RunConfig {
            g13: 0.0,
            sigma_points: 2,
            ..RunConfig::default()
        };
        for row in run_eit_loss(&cfg).unwrap() {
            assert_eq!(row.loss_numeric, 0.0);
            assert_eq!(row.loss_adiabatic, 0.0);
        }
        let text = eit_rows_csv(&run_eit_loss(&cfg).unwrap());
        assert!(text.starts_with("sigma,delta_omega,loss_numeric,loss_adiabatic,ratio,regime_ok\n"));
    }
}
