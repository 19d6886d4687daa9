use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use kerr_sim::analytic::{analytic_final_state, nonlocal_toy_gate};
use kerr_sim::modes::{interaction_energy, r_from_intensity, QUADRATURE_SAMPLES};
use kerr_sim::{
    fidelity_phase, make_pulse, spectral_report, Complex64, GateResult, GateSource, MediumConfig,
    PulseShape, PulseSpectrum, TwoPhotonState,
};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = PulseShape> {
    prop_oneof![Just(PulseShape::Gaussian), Just(PulseShape::Sech)]
}

fn spectrum() -> impl Strategy<Value = PulseSpectrum> {
    (0usize..10).prop_flat_map(|n_max| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * n_max + 1).prop_filter_map(
            "zero spectrum",
            move |raw| {
                let amps = raw
                    .into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect();
                PulseSpectrum::custom(n_max, amps).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pulses_are_normalized(shape in shape(), sigma in 0.06f64..0.15, z1 in 0.0f64..1.0) {
        let p = make_pulse(shape, sigma, z1, 8).unwrap();
        prop_assert!((p.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn overlap_parameter_is_at_most_one(p in spectrum()) {
        let r = spectral_report(&p).r;
        prop_assert!(r <= 1.0 + 1e-12, "r = {}", r);
        prop_assert!(r > 0.0);
    }

    #[test]
    fn fidelity_identity(phi in -2.0 * PI..4.0 * PI, r in 0.0f64..1.0) {
        let g = fidelity_phase(phi, r);
        let direct = (Complex64::new(1.0, 0.0) + r * (Complex64::from_polar(1.0, -phi) - 1.0)).norm_sqr();
        prop_assert!((g.fidelity_f0 - direct).abs() <= 1e-12);
    }

    #[test]
    fn projected_analytic_state_matches_formulas(
        sa in 0.06f64..0.15, sb in 0.06f64..0.15, z1 in 0.0f64..1.0, phi in 0.0f64..2.0 * PI,
    ) {
        let a = make_pulse(PulseShape::Gaussian, sa, z1, 8).unwrap();
        let b = make_pulse(PulseShape::Sech, sb, z1, 8).unwrap();
        let state0 = TwoPhotonState::product(&a, &b).unwrap();
        let medium = MediumConfig::half_ring(phi, 8);
        let out = analytic_final_state(&state0, &medium).unwrap();
        let projected = GateResult::from_overlap(
            out.overlap_with(&state0).unwrap(), phi, state0.r(), GateSource::Analytic,
        );
        let expected = fidelity_phase(phi, state0.r());
        prop_assert!((projected.fidelity_f0 - expected.fidelity_f0).abs() <= 1e-12);
        prop_assert!((projected.phase_phi - expected.phase_phi).abs() <= 1e-12);
    }

    #[test]
    fn toy_gate_is_a_global_phase(p in spectrum(), phi in -PI..PI) {
        let state0 = TwoPhotonState::product(&p, &p).unwrap();
        let out = nonlocal_toy_gate(&state0, phi);
        prop_assert!((out.norm_sqr() - state0.norm_sqr()).abs() <= 1e-15);
        let g = GateResult::from_overlap(out.overlap_with(&state0).unwrap(), phi, state0.r(), GateSource::NonlocalToy);
        prop_assert!((g.fidelity_f0 - 1.0).abs() <= 1e-12);
        prop_assert!((g.phase_phi - phi).abs() <= 1e-12);
    }
}

#[test]
fn monotonicity_on_a_grid() {
    let rs: Vec<f64> = (0..=50).map(|k| k as f64 / 100.0).collect();
    for k in 1..20 {
        let phi = PI * k as f64 / 20.0;
        for pair in rs.windows(2) {
            let (lo, hi) = (fidelity_phase(phi, pair[0]), fidelity_phase(phi, pair[1]));
            assert!(hi.fidelity_f0 < lo.fidelity_f0, "F0 at phi = {phi}");
            assert!(hi.phase_phi > lo.phase_phi, "phase at phi = {phi}");
        }
    }
}

#[test]
fn half_bandwidth_gate() {
    for phi in [0.3, 1.0, 2.5] {
        let g = fidelity_phase(phi, 0.5);
        assert_abs_diff_eq!(g.phase_phi, phi / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.fidelity_f0, (phi / 2.0).cos().powi(2), epsilon = 1e-14);
    }
}

#[test]
fn gaussian_gate_at_pi() {
    let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
    let state0 = TwoPhotonState::product(&p, &p).unwrap();
    let out = analytic_final_state(&state0, &MediumConfig::half_ring(PI, 8)).unwrap();
    let r = state0.r();
    let f0 = out.overlap_with(&state0).unwrap().norm_sqr();
    assert_abs_diff_eq!(f0, 1.0 - 4.0 * r * (1.0 - r), epsilon = 1e-12);
    assert_abs_diff_eq!(fidelity_phase(PI, 0.4).fidelity_f0, 0.04, epsilon = 1e-15);
}

#[test]
fn intensity_route_agrees_with_spectral_route() {
    for (shape, sigma, n_max) in [
        (PulseShape::Gaussian, 0.059, 8),
        (PulseShape::Gaussian, 0.078, 8),
        (PulseShape::Sech, 0.05, 8),
        (PulseShape::Sech, 0.09, 8),
        (PulseShape::Square, 0.2, 60),
    ] {
        let p = make_pulse(shape, sigma, 0.3, n_max).unwrap();
        let spectral = spectral_report(&p).r;
        let sampled =
            r_from_intensity(&p.sample_intensity(QUADRATURE_SAMPLES), p.mode_count()).unwrap();
        assert!(
            (spectral - sampled).abs() / spectral <= 0.02,
            "{shape:?} {sigma}: {spectral} vs {sampled}"
        );
    }
}

#[test]
fn closed_forms() {
    let gaussian = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8).unwrap();
    assert_abs_diff_eq!(spectral_report(&gaussian).r, 0.398, epsilon = 0.01);

    // raw sech intensity, independent of the spectral construction
    let n = 1 << 14;
    let samples: Vec<f64> = (0..n)
        .map(|k| {
            let d = k as f64 / n as f64 - 0.5;
            1.0 / (d / 0.05).cosh()
        })
        .collect();
    assert_abs_diff_eq!(
        r_from_intensity(&samples, 17).unwrap(),
        0.238,
        epsilon = 0.002
    );
}

#[test]
fn symmetric_spectra_have_zero_first_moment() {
    for (shape, n_max) in [
        (PulseShape::Gaussian, 6),
        (PulseShape::Sech, 6),
        (PulseShape::Square, 60),
    ] {
        let p = make_pulse(shape, 0.12, 0.61, n_max).unwrap();
        let first: f64 = p.modes().map(|(n, c)| n as f64 * c.norm_sqr()).sum();
        assert_abs_diff_eq!(first, 0.0, epsilon = 1e-13);
        let report = spectral_report(&p);
        assert!(report.delta_omega_std <= report.delta_omega_support);
    }
}

/// Composite Simpson rule on the pulse intensities reconstructed pointwise.
fn quadrature_overlap(a: &PulseSpectrum, b: &PulseSpectrum, medium: &MediumConfig) -> f64 {
    let n = 20_000;
    let h = medium.l / n as f64;
    let f = |k: usize| {
        let z = medium.z0 + k as f64 * h;
        a.intensity_at(z) * b.intensity_at(z)
    };
    let mut sum = f(0) + f(n);
    for k in 1..n {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k);
    }
    medium.eta * sum * h / 3.0
}

#[test]
fn half_overlap_interaction_energy() {
    let medium = MediumConfig::with_phi(0.5, 0.5, PI, 8).unwrap();
    // centred on the medium's entrance: half of each pulse is inside
    let a = make_pulse(PulseShape::Gaussian, 0.07, 0.5, 8).unwrap();
    let b = make_pulse(PulseShape::Sech, 0.06, 0.5, 8).unwrap();
    for (pa, pb) in [(&a, &a), (&a, &b), (&b, &b)] {
        let spectral = interaction_energy(pa, pb, &medium);
        let oracle = quadrature_overlap(pa, pb, &medium);
        assert!(spectral > 0.0);
        assert_abs_diff_eq!(spectral, oracle, epsilon = 1e-9 * oracle.abs().max(1.0));
    }
    let full = MediumConfig::with_phi(0.0, 1.0, PI, 8).unwrap();
    let whole = interaction_energy(&a, &a, &full) * medium.eta / full.eta;
    assert_abs_diff_eq!(
        interaction_energy(&a, &a, &medium),
        whole / 2.0,
        epsilon = 1e-9
    );
}

#[test]
fn single_mode_spectrum() {
    let p = PulseSpectrum::single_mode(1);
    assert_abs_diff_eq!(spectral_report(&p).r, 1.0 / 3.0, epsilon = 1e-15);
}
