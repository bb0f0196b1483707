//! Conservation ledgers, error norms, convergence rates, and the discrete
//! divergence of the magnetic field.

use crate::error::Error;
use crate::grid::{Grid1D, Grid2D};
use crate::integrate::{Field1D, Field2D};
use crate::state::{entropy_quantities, ConsState};

/// Domain integrals of the eight conserved quantities and the entropy.
///
/// Summation runs in fixed cell order so repeated evaluations of the same
/// field reproduce the totals bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationLedger {
    pub time: f64,
    pub totals: [f64; 8],
    pub total_entropy: f64,
    /// Number of cells, used to detect ledgers from different grids.
    pub cells: usize,
}

/// Midpoint-rule totals over a 1D field.
pub fn integrate_conserved(
    field: &Field1D,
    grid: &Grid1D,
    gamma: f64,
    time: f64,
) -> Result<ConservationLedger, Error> {
    let mut totals = [0.0; 8];
    let mut total_entropy = 0.0;
    for (q, &dx) in field.iter().zip(&grid.widths) {
        let arr = q.as_array();
        for k in 0..8 {
            totals[k] += dx * arr[k];
        }
        total_entropy += dx * entropy_quantities(q, gamma)?.entropy;
    }
    Ok(ConservationLedger {
        time,
        totals,
        total_entropy,
        cells: field.len(),
    })
}

/// Midpoint-rule totals over a 2D field.
pub fn integrate_conserved_2d(
    field: &Field2D,
    grid: &Grid2D,
    gamma: f64,
    time: f64,
) -> Result<ConservationLedger, Error> {
    let measure = grid.dx * grid.dy;
    let mut totals = [0.0; 8];
    let mut total_entropy = 0.0;
    for q in &field.data {
        let arr = q.as_array();
        for k in 0..8 {
            totals[k] += measure * arr[k];
        }
        total_entropy += measure * entropy_quantities(q, gamma)?.entropy;
    }
    Ok(ConservationLedger {
        time,
        totals,
        total_entropy,
        cells: field.data.len(),
    })
}

/// Absolute change of each conserved total and of the entropy between two
/// ledgers on the same grid.
pub fn delta_e(
    initial: &ConservationLedger,
    fin: &ConservationLedger,
) -> Result<([f64; 8], f64), Error> {
    if initial.cells != fin.cells {
        return Err(Error::GridMismatch);
    }
    let mut deltas = [0.0; 8];
    for k in 0..8 {
        deltas[k] = (initial.totals[k] - fin.totals[k]).abs();
    }
    Ok((deltas, (initial.total_entropy - fin.total_entropy).abs()))
}

/// Per-variable L2 norms of the difference between the field and an exact
/// solution sampled at cell centers.
pub fn l2_error(
    field: &Field1D,
    exact: &dyn Fn(f64, f64) -> ConsState,
    grid: &Grid1D,
    t: f64,
) -> [f64; 8] {
    let mut sums = [0.0; 8];
    for ((q, &x), &dx) in field.iter().zip(&grid.centers).zip(&grid.widths) {
        let diff_base = q.as_array();
        let exact_arr = exact(x, t).as_array();
        for k in 0..8 {
            let d = diff_base[k] - exact_arr[k];
            sums[k] += dx * d * d;
        }
    }
    sums.map(f64::sqrt)
}

/// Pairwise experimental orders of convergence and their mean.
pub fn eoc(errors: &[f64], cell_counts: &[usize]) -> Result<(Vec<f64>, f64), Error> {
    if errors.len() != cell_counts.len() || errors.len() < 2 {
        return Err(Error::LengthMismatch {
            errors: errors.len(),
            cells: cell_counts.len(),
        });
    }
    let mut rates = Vec::with_capacity(errors.len() - 1);
    for k in 0..errors.len() - 1 {
        let rate = (errors[k] / errors[k + 1]).ln()
            / (cell_counts[k + 1] as f64 / cell_counts[k] as f64).ln();
        rates.push(rate);
    }
    let mean = rates.iter().sum::<f64>() / rates.len() as f64;
    Ok((rates, mean))
}

/// Discrete divergence of B with forward differences and periodic wrap,
/// consistent with the source term discretization.
pub fn discrete_div_b(field: &Field2D, grid: &Grid2D) -> Vec<f64> {
    let (nx, ny) = (field.nx, field.ny);
    let mut div = vec![0.0; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let ip = (i + 1) % nx;
            let jp = (j + 1) % ny;
            div[j * nx + i] = (field.get(ip, j).b1 - field.get(i, j).b1) / grid.dx
                + (field.get(i, jp).b2 - field.get(i, j).b2) / grid.dy;
        }
    }
    div
}
