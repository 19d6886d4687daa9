use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kerr_sim::experiments::{run, Experiment, RunConfig, JOBS_ENV};
use kerr_sim::{Error, Method, PulseShape};

#[derive(Parser)]
#[command(
    name = "kerr-sim",
    version,
    about = "Kerr cross-phase gate and EIT loss experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic F0/phase curves with numeric dots for two gaussian pulses
    Fig1(Overrides),
    /// Numeric Phi sweep for the configured pulse
    Sweep(Overrides),
    /// Single-atom EIT absorption against the adiabatic prediction
    EitLoss(Overrides),
    /// Spectral overlap and bandwidth report for the configured pulse
    RCalc(Overrides),
    /// Loss-limited gate budget for a sigma = 0.059 gaussian pulse
    WorkedExample(Overrides),
    /// Run the experiment named by --experiment or the config file
    Run(Overrides),
}

#[derive(Args)]
struct Overrides {
    /// JSON run configuration; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<Experiment>,
    #[arg(long, value_parser = parse_shape)]
    shape: Option<PulseShape>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    z1: Option<f64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    z0: Option<f64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long = "phi")]
    phi: Option<f64>,
    #[arg(long)]
    phi_min: Option<f64>,
    #[arg(long)]
    phi_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    #[arg(long)]
    g13: Option<f64>,
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long)]
    gamma31: Option<f64>,
    #[arg(long)]
    radiative_gamma31: Option<f64>,
    #[arg(long)]
    eit_steps: Option<usize>,
    #[arg(long)]
    sigma_min: Option<f64>,
    #[arg(long)]
    sigma_max: Option<f64>,
    #[arg(long)]
    sigma_points: Option<usize>,
    /// Output CSV path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
}

fn parse_shape(s: &str) -> Result<PulseShape, String> {
    serde_json::from_value(serde_json::Value::String(s.to_lowercase())).map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
        .map_err(|e| e.to_string())
}

impl Overrides {
    fn apply(self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_json_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })*
            };
        }
        macro_rules! set_opt {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$field = Some(v); })*
            };
        }
        set!(shape, sigma, z0, l, phi_min, points, steps, method, g13, omega_c, gamma31);
        set!(
            radiative_gamma31,
            eit_steps,
            sigma_min,
            sigma_max,
            sigma_points
        );
        set_opt!(experiment, z1, n_max, eta, phi, phi_max, out, jobs);
        Ok(cfg)
    }
}

fn execute(command: Command) -> Result<(), Error> {
    let (fixed, overrides) = match command {
        Command::Fig1(o) => (Some(Experiment::Fig1), o),
        Command::Sweep(o) => (Some(Experiment::Sweep), o),
        Command::EitLoss(o) => (Some(Experiment::EitLoss), o),
        Command::RCalc(o) => (Some(Experiment::RCalc), o),
        Command::WorkedExample(o) => (Some(Experiment::WorkedExample), o),
        Command::Run(o) => (None, o),
    };
    let cfg = overrides.apply()?;
    let experiment = fixed
        .or(cfg.experiment)
        .ok_or_else(|| Error::Config("no experiment given".into()))?;
    let text = run(&cfg, experiment)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
