//! The loss-limited gate budget: pulse → r → loss → largest Φ at 10%
//! infidelity → phase → overlap with doing nothing.

use kerr_sim::experiments::run_worked_example;

fn main() -> kerr_sim::Result<()> {
    let w = run_worked_example()?;
    println!("gaussian sigma = {}, M = {}", w.sigma, w.m);
    println!("r                  {:.4}", w.r);
    println!(
        "P_loss             {:.4}  (2r^2/pi = {:.4})",
        w.p_loss, w.p_loss_gaussian
    );
    println!("Phi at 1-F0 = {}  {:.4}", w.infidelity, w.phi_bare);
    println!("phi                {:.4}", w.phase_phi);
    println!("cos^2(phi/2)       {:.4}", w.do_nothing_overlap);
    Ok(())
}
