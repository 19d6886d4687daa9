//! Writes the fidelity/phase figure data as CSV (a light version of
//! `kerr-sim fig1`: 5 numeric points per pulse at 5000 steps).

use kerr_sim::experiments::{gate_rows_csv, run_fig1, RunConfig};

fn main() -> kerr_sim::Result<()> {
    let cfg = RunConfig {
        points: 5,
        steps: 5_000,
        ..RunConfig::default()
    };
    let csv = gate_rows_csv(&run_fig1(&cfg)?);
    let path = std::env::temp_dir().join("kerr_fig1.csv");
    std::fs::write(&path, &csv)?;
    for line in csv.lines().filter(|l| !l.ends_with(",,")) {
        println!("{line}");
    }
    println!("wrote {}", path.display());
    Ok(())
}
