//! The nonlocal toy interaction multiplies every amplitude by one phase, so it
//! reaches any phase with unit fidelity; the local medium does not. The
//! Heisenberg-picture phase profile is shown for contrast.

use std::f64::consts::PI;

use kerr_sim::analytic::{heisenberg_phase_profile, nonlocal_toy_gate};
use kerr_sim::{fidelity_phase, make_pulse, GateResult, GateSource, PulseShape, TwoPhotonState};

fn main() -> kerr_sim::Result<()> {
    let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8)?;
    let state0 = TwoPhotonState::product(&p, &p)?;
    for phi in [PI / 4.0, PI / 2.0, PI] {
        let out = nonlocal_toy_gate(&state0, phi);
        let toy = GateResult::from_overlap(
            out.overlap_with(&state0)?,
            phi,
            state0.r(),
            GateSource::NonlocalToy,
        );
        let local = fidelity_phase(phi, state0.r());
        println!(
            "Phi = {phi:.4}: toy F0 = {:.4} phi = {:.4}; local F0 = {:.4} phi = {:.4}",
            toy.fidelity_f0, toy.phase_phi, local.fidelity_f0, local.phase_phi
        );
    }

    let intensity = p.sample_intensity(16);
    let profile = heisenberg_phase_profile(&intensity, 0.1);
    println!("\nclassical phase profile (kappa l = 0.1) on 16 samples:");
    for (k, phase) in profile.iter().enumerate() {
        println!("z = {:.4}  {phase:.5}", k as f64 / 16.0);
    }
    Ok(())
}
