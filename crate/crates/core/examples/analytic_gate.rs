//! Delta-kernel gate: fidelity and phase against `Φ` for a few overlap
//! parameters, and the projection of the analytic final state of a real
//! pulse pair.

use std::f64::consts::PI;

use kerr_sim::analytic::analytic_final_state;
use kerr_sim::{
    fidelity_phase, make_pulse, GateResult, GateSource, MediumConfig, PulseShape, TwoPhotonState,
};

fn main() -> kerr_sim::Result<()> {
    println!("Phi     r=0.2 (F0, phi)   r=0.3 (F0, phi)   r=0.4 (F0, phi)");
    for k in 0..=8 {
        let phi = PI * k as f64 / 4.0;
        let cells: Vec<String> = [0.2, 0.3, 0.4]
            .iter()
            .map(|&r| {
                let g = fidelity_phase(phi, r);
                format!("{:.4} {:+.4}", g.fidelity_f0, g.phase_phi)
            })
            .collect();
        println!("{phi:.4}  {}", cells.join("   "));
    }

    let p = make_pulse(PulseShape::Gaussian, 0.059, 0.25, 8)?;
    let state0 = TwoPhotonState::product(&p, &p)?;
    let medium = MediumConfig::half_ring(PI, 8);
    let out = analytic_final_state(&state0, &medium)?;
    let g = GateResult::from_overlap(
        out.overlap_with(&state0)?,
        medium.phi(),
        state0.r(),
        GateSource::Analytic,
    );
    println!(
        "\nsigma = 0.059 at Phi = pi: r = {:.5}, F0 = {:.5}, phi = {:.2e}, norm = {:.5}",
        g.r,
        g.fidelity_f0,
        g.phase_phi,
        out.norm_sqr()
    );
    Ok(())
}
