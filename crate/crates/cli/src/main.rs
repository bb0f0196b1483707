use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use mhd_esfv::config::{Experiment, RunConfig};
use mhd_esfv::run_experiment;

/// Entropy conserving and entropy stable finite volume experiments for
/// ideal MHD.
#[derive(Parser, Debug)]
#[command(name = "mhd-esfv", version, about)]
struct Cli {
    /// Experiment: convergence, conservation, riemann, shocktube2d, rotor
    experiment: String,

    /// Flat key=value config file
    #[arg(long)]
    config: Option<PathBuf>,

    /// Problem id (manufactured, briowu, ryujones, torrilhon, shocktube25d, rotor1)
    #[arg(long)]
    problem: Option<String>,

    /// Interface flux: EC, EKEC, ES_ROE, ES_LLF
    #[arg(long)]
    flux: Option<String>,

    /// Cell count, or comma list for convergence studies
    #[arg(long)]
    cells: Option<String>,

    /// Courant number, or comma list for CFL sweeps
    #[arg(long)]
    cfl: Option<String>,

    /// Grid kind: regular or stretched
    #[arg(long)]
    grid: Option<String>,

    /// Max/min width ratio of the stretched grid
    #[arg(long)]
    ratio: Option<String>,

    /// Adiabatic index override
    #[arg(long)]
    gamma: Option<String>,

    /// Final time override
    #[arg(long = "t_final")]
    t_final: Option<String>,

    /// Boundary conditions: periodic or outflow
    #[arg(long)]
    bc: Option<String>,

    /// Artifact directory
    #[arg(long = "output_dir")]
    output_dir: Option<String>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, mhd_esfv::CliError> {
    let experiment = Experiment::parse(&cli.experiment)?;
    let mut cfg = RunConfig::defaults(experiment);
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let overrides: [(&str, &Option<String>); 9] = [
        ("problem", &cli.problem),
        ("flux", &cli.flux),
        ("cells", &cli.cells),
        ("cfl", &cli.cfl),
        ("grid", &cli.grid),
        ("ratio", &cli.ratio),
        ("gamma", &cli.gamma),
        ("t_final", &cli.t_final),
        ("output_dir", &cli.output_dir),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.apply(key, v)?;
        }
    }
    if let Some(bc) = &cli.bc {
        cfg.apply("bc", bc)?;
    }
    cfg.apply_env();
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("mhd-esfv: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run_experiment(&cfg) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mhd-esfv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
