//! Full RK4 integration of the two-photon amplitudes for the sigma = 0.078
//! pulse, compared with the delta-kernel prediction, using both
//! representations of the state.

use std::f64::consts::PI;
use std::time::Instant;

use kerr_sim::dynamics::numeric_gate;
use kerr_sim::{
    evolve, fidelity_phase, make_pulse, spectral_report, EvolutionConfig, MediumConfig, Method,
    PulseShape, TwoPhotonState,
};

fn main() -> kerr_sim::Result<()> {
    let p = make_pulse(PulseShape::Gaussian, 0.078, 0.25, 8)?;
    let r = spectral_report(&p).r;
    println!("r = {r:.5}");
    println!("Phi     F0_num   F0_an    phi_num  phi_an   norm_err");
    for k in 0..=4 {
        let phi = PI * k as f64 / 4.0;
        let medium = MediumConfig::half_ring(phi, 8);
        let num = numeric_gate(&p, &p, &medium, &EvolutionConfig::default())?;
        let an = fidelity_phase(phi, r);
        println!(
            "{phi:.4}  {:.5}  {:.5}  {:.5}  {:.5}  {:.1e}",
            num.result.fidelity_f0,
            an.fidelity_f0,
            num.result.phase_phi,
            an.phase_phi,
            num.norm_error
        );
    }

    let state0 = TwoPhotonState::product(&p, &p)?;
    let medium = MediumConfig::half_ring(PI, 8);
    let mut outs = Vec::new();
    for method in [Method::FullMatrix, Method::ReducedMu] {
        let start = Instant::now();
        outs.push(evolve(
            &state0,
            &medium,
            &EvolutionConfig::new(20_000, method),
        )?);
        println!("{method:?}: {:.2?}", start.elapsed());
    }
    println!("max |difference| = {:.1e}", outs[0].max_abs_diff(&outs[1])?);
    Ok(())
}
