//! The five experiment drivers.

use std::io::{BufWriter, Write};
use std::path::Path;

use mhd_core::diagnostics::{delta_e, eoc, integrate_conserved, integrate_conserved_2d, l2_error};
use mhd_core::diagnostics::{discrete_div_b, ConservationLedger};
use mhd_core::grid::{make_stretched_grid, make_uniform_grid, BoundaryKind, Grid1D, Grid2D};
use mhd_core::integrate::{advance_1d, advance_2d, Field1D, Field2D, RkScheme};
use mhd_core::problems::{
    init_manufactured, init_riemann, init_rotor, init_shock_tube_25d, manufactured_source,
    manufactured_state, ProblemId, ProblemSpec,
};
use mhd_core::state::prim_to_cons;

use crate::config::{Experiment, GridKind, RunConfig};
use crate::csv::{fmt, write_ledger, write_snapshot_1d, write_snapshot_2d};
use crate::CliError;

const VARIABLE_NAMES: [&str; 8] = ["rho", "momx", "momy", "momz", "energy", "B1", "B2", "B3"];

/// Run the configured experiment, writing artifacts under the output
/// directory. Returns the paths written.
pub fn run_experiment(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    std::fs::create_dir_all(&cfg.output_dir)?;
    match cfg.experiment {
        Experiment::Convergence => run_convergence(cfg),
        Experiment::Conservation => run_conservation(cfg),
        Experiment::Riemann => run_riemann(cfg),
        Experiment::Shocktube2d => run_shocktube2d(cfg),
        Experiment::Rotor => run_rotor(cfg),
    }
}

fn build_grid(cfg: &RunConfig, n: usize, spec: &ProblemSpec) -> Result<Grid1D, CliError> {
    Ok(match cfg.grid_kind {
        GridKind::Regular => make_uniform_grid(n, spec.xmin, spec.xmax)?,
        GridKind::Stretched => make_stretched_grid(n, spec.xmin, spec.xmax, cfg.ratio)?,
    })
}

fn run_convergence(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    if cfg.problem != ProblemId::Manufactured {
        return Err(CliError::Config(
            "convergence runs use the manufactured problem".into(),
        ));
    }
    let spec = ProblemSpec::of(ProblemId::Manufactured);
    let gamma = cfg.gamma.unwrap_or(spec.gamma);
    let t_final = cfg.t_final.unwrap_or(spec.t_final);
    let cfl = cfg.cfl[0];

    let mut errors_by_n: Vec<[f64; 8]> = Vec::new();
    for &n in &cfg.cells {
        let grid = build_grid(cfg, n, &spec)?;
        let mut field = init_manufactured(&grid, gamma, 0.0);
        advance_1d(
            &mut field,
            &grid,
            gamma,
            cfg.flux,
            BoundaryKind::Periodic,
            cfl,
            t_final,
            RkScheme::Lserk45,
            Some(&manufactured_source),
        )?;
        let exact = |x: f64, t: f64| prim_to_cons(&manufactured_state(x, t), gamma);
        errors_by_n.push(l2_error(&field, &exact, &grid, t_final));
    }

    let errors_path = cfg.output_dir.join("errors.csv");
    let mut out = BufWriter::new(std::fs::File::create(&errors_path)?);
    writeln!(out, "cells,{}", VARIABLE_NAMES.join(","))?;
    for (&n, errs) in cfg.cells.iter().zip(&errors_by_n) {
        let cols: Vec<String> = errs.iter().map(|&e| fmt(e)).collect();
        writeln!(out, "{n},{}", cols.join(","))?;
    }
    drop(out);

    let eoc_path = cfg.output_dir.join("eoc.csv");
    let mut out = BufWriter::new(std::fs::File::create(&eoc_path)?);
    writeln!(out, "pair,{}", VARIABLE_NAMES.join(","))?;
    let pairs = cfg.cells.len() - 1;
    let mut table: Vec<Vec<String>> = vec![Vec::new(); pairs + 1];
    for var in 0..8 {
        let column: Vec<f64> = errors_by_n.iter().map(|e| e[var]).collect();
        if column.iter().any(|&e| e <= 0.0) {
            for row in table.iter_mut() {
                row.push(String::new());
            }
            continue;
        }
        let (rates, mean) = eoc(&column, &cfg.cells)?;
        for (k, rate) in rates.iter().enumerate() {
            table[k].push(fmt(*rate));
        }
        table[pairs].push(fmt(mean));
    }
    for (k, row) in table.iter().enumerate() {
        let label = if k < pairs {
            format!("{}-{}", cfg.cells[k], cfg.cells[k + 1])
        } else {
            "mean".to_string()
        };
        writeln!(out, "{label},{}", row.join(","))?;
    }
    drop(out);
    Ok(vec![errors_path, eoc_path])
}

fn conservation_run(
    cfg: &RunConfig,
    spec: &ProblemSpec,
    gamma: f64,
    t_final: f64,
    cfl: f64,
    bc: BoundaryKind,
) -> Result<(ConservationLedger, ConservationLedger, Field1D, Grid1D), CliError> {
    let grid = build_grid(cfg, cfg.cells[0], spec)?;
    let mut field = init_riemann(spec, &grid, gamma)?;
    let before = integrate_conserved(&field, &grid, gamma, 0.0)?;
    advance_1d(
        &mut field,
        &grid,
        gamma,
        cfg.flux,
        bc,
        cfl,
        t_final,
        RkScheme::Lserk45,
        None,
    )?;
    let after = integrate_conserved(&field, &grid, gamma, t_final)?;
    Ok((before, after, field, grid))
}

fn write_summary(
    path: &Path,
    rows: &[(f64, [f64; 8], f64)],
) -> Result<(), CliError> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "cfl,mass,momx,momy,momz,energy,B1,B2,B3,entropy")?;
    for (cfl, deltas, de) in rows {
        let cols: Vec<String> = deltas.iter().copied().chain([*de]).map(fmt).collect();
        writeln!(out, "{cfl},{}", cols.join(","))?;
    }
    Ok(())
}

fn run_conservation(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let spec = ProblemSpec::of(cfg.problem);
    if spec.riemann_data().is_none() {
        return Err(CliError::Config(
            "conservation runs use one of the 1D Riemann problems".into(),
        ));
    }
    let gamma = cfg.gamma.unwrap_or(spec.gamma);
    let t_final = cfg.t_final.unwrap_or(spec.t_final);
    let mut paths = Vec::new();
    let mut summary = Vec::new();
    for &cfl in &cfg.cfl {
        // Conservation ledgers are meaningful on a closed domain.
        let (before, after, _, _) =
            conservation_run(cfg, &spec, gamma, t_final, cfl, BoundaryKind::Periodic)?;
        let ledger_path = cfg.output_dir.join(format!("ledger_cfl{cfl}.csv"));
        write_ledger(&ledger_path, &[before, after])?;
        paths.push(ledger_path);
        let (deltas, de) = delta_e(&before, &after)?;
        summary.push((cfl, deltas, de));
    }
    let summary_path = cfg.output_dir.join("summary.csv");
    write_summary(&summary_path, &summary)?;
    paths.push(summary_path);
    Ok(paths)
}

fn run_riemann(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let spec = ProblemSpec::of(cfg.problem);
    if spec.riemann_data().is_none() {
        return Err(CliError::Config(
            "riemann runs use one of the 1D Riemann problems".into(),
        ));
    }
    let gamma = cfg.gamma.unwrap_or(spec.gamma);
    let t_final = cfg.t_final.unwrap_or(spec.t_final);
    let bc = cfg.bc.unwrap_or(spec.default_bc);
    let grid = build_grid(cfg, cfg.cells[0], &spec)?;
    let mut field = init_riemann(&spec, &grid, gamma)?;
    let before = integrate_conserved(&field, &grid, gamma, 0.0)?;
    advance_1d(
        &mut field,
        &grid,
        gamma,
        cfg.flux,
        bc,
        cfg.cfl[0],
        t_final,
        RkScheme::Lserk45,
        None,
    )?;
    let after = integrate_conserved(&field, &grid, gamma, t_final)?;
    let snapshot_path = cfg.output_dir.join("snapshot.csv");
    write_snapshot_1d(&snapshot_path, &field, &grid, gamma)?;
    let ledger_path = cfg.output_dir.join("ledger.csv");
    write_ledger(&ledger_path, &[before, after])?;
    Ok(vec![snapshot_path, ledger_path])
}

fn run_shocktube2d(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let spec = ProblemSpec::of(ProblemId::ShockTube25D);
    let gamma = cfg.gamma.unwrap_or(spec.gamma);
    let t_final = cfg.t_final.unwrap_or(spec.t_final);
    let n = cfg.cells[0];
    let grid = Grid2D::new(n, n, spec.xmin, spec.xmax, spec.ymin, spec.ymax)?;
    let mut paths = Vec::new();
    let mut summary = Vec::new();
    for &cfl in &cfg.cfl {
        let mut field = init_shock_tube_25d(&grid, gamma)?;
        let before = integrate_conserved_2d(&field, &grid, gamma, 0.0)?;
        advance_2d(
            &mut field,
            &grid,
            gamma,
            cfg.flux,
            BoundaryKind::Periodic,
            cfl,
            t_final,
            RkScheme::Rk2,
        )?;
        let after = integrate_conserved_2d(&field, &grid, gamma, t_final)?;
        let ledger_path = cfg.output_dir.join(format!("ledger_cfl{cfl}.csv"));
        write_ledger(&ledger_path, &[before, after])?;
        paths.push(ledger_path);
        let snapshot_path = cfg.output_dir.join(format!("snapshot_cfl{cfl}.csv"));
        write_snapshot_2d(&snapshot_path, &field, &grid, gamma)?;
        paths.push(snapshot_path);
        let (deltas, de) = delta_e(&before, &after)?;
        summary.push((cfl, deltas, de));
    }
    let summary_path = cfg.output_dir.join("summary.csv");
    write_summary(&summary_path, &summary)?;
    paths.push(summary_path);
    Ok(paths)
}

fn run_rotor(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let spec = ProblemSpec::of(ProblemId::Rotor1);
    let gamma = cfg.gamma.unwrap_or(spec.gamma);
    let t_final = cfg.t_final.unwrap_or(spec.t_final);
    let n = cfg.cells[0];
    let grid = Grid2D::new(n, n, spec.xmin, spec.xmax, spec.ymin, spec.ymax)?;
    let mut field = init_rotor(&grid, gamma)?;
    let before = integrate_conserved_2d(&field, &grid, gamma, 0.0)?;
    advance_2d(
        &mut field,
        &grid,
        gamma,
        cfg.flux,
        BoundaryKind::Periodic,
        cfg.cfl[0],
        t_final,
        RkScheme::Rk2,
    )?;
    let after = integrate_conserved_2d(&field, &grid, gamma, t_final)?;
    let snapshot_path = cfg.output_dir.join("snapshot.csv");
    write_snapshot_2d(&snapshot_path, &field, &grid, gamma)?;
    let ledger_path = cfg.output_dir.join("ledger.csv");
    write_ledger(&ledger_path, &[before, after])?;

    let div = discrete_div_b(&field, &grid);
    let divb_path = cfg.output_dir.join("divb.csv");
    let mut out = BufWriter::new(std::fs::File::create(&divb_path)?);
    writeln!(out, "x,y,divb")?;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            writeln!(
                out,
                "{},{},{}",
                fmt(grid.x_center(i)),
                fmt(grid.y_center(j)),
                fmt(div[j * grid.nx + i])
            )?;
        }
    }
    drop(out);
    let max_div = div.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    println!("rotor: max |div B| = {max_div:.6e}");
    Ok(vec![snapshot_path, ledger_path, divb_path])
}

/// L2 distance (over all conserved components) between a field and a
/// reference snapshot treated as piecewise constant.
pub fn l2_distance_to_reference(
    field: &Field1D,
    grid: &Grid1D,
    gamma: f64,
    reference: &[(f64, mhd_core::state::PrimState)],
    ref_grid: &Grid1D,
) -> f64 {
    let mut total = 0.0;
    for ((q, &x), &dx) in field.iter().zip(&grid.centers).zip(&grid.widths) {
        // Fine cell containing this center.
        let mut lo = 0usize;
        let mut hi = ref_grid.n() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            let right_face = ref_grid.centers[mid] + 0.5 * ref_grid.widths[mid];
            if x < right_face {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let q_ref = prim_to_cons(&reference[lo].1, gamma).as_array();
        let q_arr = q.as_array();
        for k in 0..8 {
            let d = q_arr[k] - q_ref[k];
            total += dx * d * d;
        }
    }
    total.sqrt()
}
