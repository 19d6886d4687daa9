//! Single-atom EIT absorption of a gaussian photon: numeric loss against the
//! adiabatic estimate over a decade of bandwidths, the excited-state
//! population trace, and the total loss of a dense medium.

use kerr_sim::eit::{adiabatic_c3_profile, evolve_atom, g13_from_medium, transparency_width};
use kerr_sim::experiments::loglog_slope;
use kerr_sim::modes::minimal_n_max;
use kerr_sim::{make_pulse, spectral_report, EitConfig, MediumPhysical, PulseShape};

fn main() -> kerr_sim::Result<()> {
    let cfg = EitConfig {
        g13: 30.0,
        omega_c: 2000.0,
        gamma31: 1000.0,
        radiative_gamma31: 1000.0,
        steps: 20_000,
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    println!("sigma    d_omega   loss       adiabatic  ratio   in_regime");
    for sigma in [0.01, 0.02, 0.05, 0.1] {
        let p = make_pulse(PulseShape::Gaussian, sigma, 0.5, minimal_n_max(sigma))?;
        let dw = spectral_report(&p).delta_omega_std;
        let res = evolve_atom(&p, &cfg)?;
        println!(
            "{sigma:<7}  {dw:>7.3}  {:.3e}  {:.3e}  {:.4}  {}",
            res.loss_numeric,
            res.loss_adiabatic,
            res.loss_numeric / res.loss_adiabatic,
            res.regime_ok
        );
        xs.push(dw);
        ys.push(res.loss_numeric);
    }
    println!("log-log slope: {:.4}", loglog_slope(&xs, &ys));

    let p = make_pulse(PulseShape::Gaussian, 0.05, 0.5, minimal_n_max(0.05))?;
    let res = evolve_atom(&p, &cfg)?;
    println!("\nt       |C3|^2     adiabatic");
    for k in (0..=20).map(|k| k * cfg.steps / 20) {
        let t = res.time_of_step(k);
        println!(
            "{t:.3}  {:.3e}  {:.3e}",
            res.c3_trajectory[k],
            adiabatic_c3_profile(&p, &cfg, t)
        );
    }

    let medium = MediumPhysical::from_atoms(1e4, 1e-3);
    let g = g13_from_medium(cfg.radiative_gamma31, medium.sigma_a_over_a);
    let dense = EitConfig { g13: g, ..cfg };
    let width = transparency_width(&dense, &medium)?;
    println!("\n1e4 atoms, sigma_a/A = 1e-3: g13 = {g:.4}, transparency width = {width:.2}");
    Ok(())
}
