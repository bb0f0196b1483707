//! CSV emission with round-trip decimal formatting.

use std::io::{BufWriter, Write};
use std::path::Path;

use mhd_core::diagnostics::ConservationLedger;
use mhd_core::grid::{Grid1D, Grid2D};
use mhd_core::integrate::{Field1D, Field2D};
use mhd_core::state::{cons_to_prim, PrimState};

use crate::CliError;

/// 17 significant digits so ledger deltas at the rounding floor survive
/// serialization.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SNAPSHOT_HEADER_1D: &str = "x,rho,u,v,w,p,B1,B2,B3";
pub const SNAPSHOT_HEADER_2D: &str = "x,y,rho,u,v,w,p,B1,B2,B3";
pub const LEDGER_HEADER: &str = "time,mass,momx,momy,momz,energy,B1,B2,B3,entropy";

fn prim_fields(pr: &PrimState) -> [f64; 8] {
    [pr.rho, pr.u, pr.v, pr.w, pr.p, pr.b1, pr.b2, pr.b3]
}

pub fn write_snapshot_1d(
    path: &Path,
    field: &Field1D,
    grid: &Grid1D,
    gamma: f64,
) -> Result<(), CliError> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{SNAPSHOT_HEADER_1D}")?;
    for (q, &x) in field.iter().zip(&grid.centers) {
        let pr = cons_to_prim(q, gamma)?;
        let cols: Vec<String> = std::iter::once(x)
            .chain(prim_fields(&pr))
            .map(fmt)
            .collect();
        writeln!(out, "{}", cols.join(","))?;
    }
    Ok(())
}

pub fn write_snapshot_2d(
    path: &Path,
    field: &Field2D,
    grid: &Grid2D,
    gamma: f64,
) -> Result<(), CliError> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{SNAPSHOT_HEADER_2D}")?;
    for j in 0..field.ny {
        for i in 0..field.nx {
            let pr = cons_to_prim(field.get(i, j), gamma)?;
            let cols: Vec<String> = [grid.x_center(i), grid.y_center(j)]
                .into_iter()
                .chain(prim_fields(&pr))
                .map(fmt)
                .collect();
            writeln!(out, "{}", cols.join(","))?;
        }
    }
    Ok(())
}

pub fn write_ledger(path: &Path, rows: &[ConservationLedger]) -> Result<(), CliError> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{LEDGER_HEADER}")?;
    for row in rows {
        let cols: Vec<String> = std::iter::once(row.time)
            .chain(row.totals)
            .chain(std::iter::once(row.total_entropy))
            .map(fmt)
            .collect();
        writeln!(out, "{}", cols.join(","))?;
    }
    Ok(())
}

/// Read a 1D snapshot back: cell center plus primitive state per row.
pub fn read_snapshot_1d(path: &Path) -> Result<Vec<(f64, PrimState)>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            if line != SNAPSHOT_HEADER_1D {
                return Err(CliError::Config(format!(
                    "{}: unexpected snapshot header '{line}'",
                    path.display()
                )));
            }
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| {
                CliError::Config(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        if vals.len() != 9 {
            return Err(CliError::Config(format!(
                "{}:{}: expected 9 columns",
                path.display(),
                lineno + 1
            )));
        }
        rows.push((
            vals[0],
            PrimState::new(
                vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7], vals[8],
            ),
        ));
    }
    Ok(rows)
}
