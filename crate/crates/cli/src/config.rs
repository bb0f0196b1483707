//! Flat key=value run configuration with command-line overrides.

use std::path::{Path, PathBuf};

use mhd_core::grid::BoundaryKind;
use mhd_core::problems::ProblemId;
use mhd_core::state::FluxKind;

use crate::CliError;

/// Environment variable overriding the output directory.
pub const OUTDIR_ENV: &str = "MHD_ESFV_OUTDIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Convergence,
    Conservation,
    Riemann,
    Shocktube2d,
    Rotor,
}

impl Experiment {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "convergence" => Ok(Experiment::Convergence),
            "conservation" => Ok(Experiment::Conservation),
            "riemann" => Ok(Experiment::Riemann),
            "shocktube2d" => Ok(Experiment::Shocktube2d),
            "rotor" => Ok(Experiment::Rotor),
            other => Err(CliError::Config(format!(
                "unknown experiment '{other}' (expected convergence, conservation, riemann, shocktube2d, or rotor)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Regular,
    Stretched,
}

/// Resolved run parameters. List-valued fields (cells, cfl) hold a single
/// entry for experiments that take one value.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub problem: ProblemId,
    pub flux: FluxKind,
    pub cells: Vec<usize>,
    pub cfl: Vec<f64>,
    pub grid_kind: GridKind,
    pub ratio: f64,
    pub gamma: Option<f64>,
    pub t_final: Option<f64>,
    pub bc: Option<BoundaryKind>,
    pub output_dir: PathBuf,
}

impl RunConfig {
    /// Defaults per experiment, mirroring the study protocols.
    pub fn defaults(experiment: Experiment) -> RunConfig {
        let (problem, flux, cells, cfl) = match experiment {
            Experiment::Convergence => (
                ProblemId::Manufactured,
                FluxKind::Ec,
                vec![50, 100, 200, 400],
                vec![0.5],
            ),
            Experiment::Conservation => (
                ProblemId::BrioWu,
                FluxKind::Ec,
                vec![100],
                vec![1.0, 0.1, 0.01],
            ),
            Experiment::Riemann => (ProblemId::BrioWu, FluxKind::EsRoe, vec![200], vec![0.1]),
            Experiment::Shocktube2d => (
                ProblemId::ShockTube25D,
                FluxKind::Ec,
                vec![50],
                vec![1.0, 0.1, 0.01],
            ),
            Experiment::Rotor => (ProblemId::Rotor1, FluxKind::EsRoe, vec![128], vec![0.8]),
        };
        RunConfig {
            experiment,
            problem,
            flux,
            cells,
            cfl,
            grid_kind: GridKind::Regular,
            ratio: 10.0,
            gamma: None,
            t_final: None,
            bc: None,
            output_dir: PathBuf::from("out"),
        }
    }

    /// Apply one key=value pair; flag names mirror the keys.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Config(format!("invalid {what} '{value}'"));
        match key {
            "experiment" => {
                // The experiment is fixed positionally; accept a matching
                // key for self-describing config files.
                let exp = Experiment::parse(value)?;
                if exp != self.experiment {
                    return Err(CliError::Config(format!(
                        "config file is for experiment '{value}', not the requested one"
                    )));
                }
            }
            "problem" => {
                self.problem = match value {
                    "manufactured" => ProblemId::Manufactured,
                    "briowu" => ProblemId::BrioWu,
                    "ryujones" => ProblemId::RyuJones,
                    "torrilhon" => ProblemId::Torrilhon,
                    "shocktube25d" => ProblemId::ShockTube25D,
                    "rotor1" => ProblemId::Rotor1,
                    _ => return Err(bad("problem")),
                }
            }
            "flux" => {
                self.flux = match value {
                    "EC" => FluxKind::Ec,
                    "EKEC" => FluxKind::Ekec,
                    "ES_ROE" => FluxKind::EsRoe,
                    "ES_LLF" => FluxKind::EsLlf,
                    _ => return Err(bad("flux")),
                }
            }
            "cells" => {
                self.cells = value
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad("cells"))?;
                if self.cells.is_empty() || self.cells.iter().any(|&n| n < 2) {
                    return Err(bad("cells"));
                }
            }
            "cfl" => {
                self.cfl = value
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad("cfl"))?;
                if self.cfl.is_empty() || self.cfl.iter().any(|&c| !(c > 0.0)) {
                    return Err(bad("cfl"));
                }
            }
            "grid" => {
                self.grid_kind = match value {
                    "regular" => GridKind::Regular,
                    "stretched" => GridKind::Stretched,
                    _ => return Err(bad("grid")),
                }
            }
            "ratio" => {
                self.ratio = value.parse().map_err(|_| bad("ratio"))?;
                if !(self.ratio >= 1.0) {
                    return Err(bad("ratio"));
                }
            }
            "gamma" => {
                let g: f64 = value.parse().map_err(|_| bad("gamma"))?;
                if !(g > 1.0) {
                    return Err(bad("gamma"));
                }
                self.gamma = Some(g);
            }
            "t_final" => {
                let t: f64 = value.parse().map_err(|_| bad("t_final"))?;
                if !(t >= 0.0) {
                    return Err(bad("t_final"));
                }
                self.t_final = Some(t);
            }
            "bc" => {
                self.bc = Some(match value {
                    "periodic" => BoundaryKind::Periodic,
                    "outflow" => BoundaryKind::Outflow,
                    _ => return Err(bad("bc")),
                })
            }
            "output_dir" => self.output_dir = PathBuf::from(value),
            other => {
                return Err(CliError::Config(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }

    /// Read a flat key=value file ('#' starts a comment).
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Honor the output directory environment override.
    pub fn apply_env(&mut self) {
        if let Ok(dir) = std::env::var(OUTDIR_ENV) {
            if !dir.is_empty() {
                self.output_dir = PathBuf::from(dir);
            }
        }
    }
}
