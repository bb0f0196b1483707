//! Structured 1D and 2D grids and ghost-cell boundary handling.

use crate::error::Error;
use crate::state::ConsState;

/// Boundary treatment for ghost cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Periodic,
    /// Zero-order extrapolation so waves exit cleanly.
    Outflow,
}

/// One-dimensional cell-centered grid, regular or stretched.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub centers: Vec<f64>,
    pub widths: Vec<f64>,
    pub xmin: f64,
    pub xmax: f64,
}

impl Grid1D {
    pub fn n(&self) -> usize {
        self.centers.len()
    }
}

/// Uniform two-dimensional grid on a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self, Error> {
        if nx < 2 || ny < 2 || !(xmax > xmin) || !(ymax > ymin) {
            return Err(Error::InvalidExtent { xmin, xmax });
        }
        Ok(Grid2D {
            nx,
            ny,
            dx: (xmax - xmin) / nx as f64,
            dy: (ymax - ymin) / ny as f64,
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    pub fn x_center(&self, i: usize) -> f64 {
        self.xmin + (i as f64 + 0.5) * self.dx
    }

    pub fn y_center(&self, j: usize) -> f64 {
        self.ymin + (j as f64 + 0.5) * self.dy
    }
}

/// Regular grid with equal cell widths.
pub fn make_uniform_grid(n: usize, xmin: f64, xmax: f64) -> Result<Grid1D, Error> {
    if n < 2 || !(xmax > xmin) {
        return Err(Error::InvalidExtent { xmin, xmax });
    }
    let dx = (xmax - xmin) / n as f64;
    Ok(Grid1D {
        centers: (0..n).map(|i| xmin + (i as f64 + 0.5) * dx).collect(),
        widths: vec![dx; n],
        xmin,
        xmax,
    })
}

/// Stretched grid whose widths form a monotone geometric progression with
/// widths[n-1]/widths[0] equal to `ratio`.
pub fn make_stretched_grid(n: usize, xmin: f64, xmax: f64, ratio: f64) -> Result<Grid1D, Error> {
    if n < 2 || !(xmax > xmin) || !(ratio >= 1.0) {
        return Err(Error::InvalidExtent { xmin, xmax });
    }
    if ratio == 1.0 {
        return make_uniform_grid(n, xmin, xmax);
    }
    let growth = ratio.powf(1.0 / (n as f64 - 1.0));
    // Sum of the geometric series fixes the first width.
    let sum: f64 = (0..n).map(|i| growth.powi(i as i32)).sum();
    let w0 = (xmax - xmin) / sum;
    let widths: Vec<f64> = (0..n).map(|i| w0 * growth.powi(i as i32)).collect();
    let mut centers = Vec::with_capacity(n);
    let mut left = xmin;
    for w in &widths {
        centers.push(left + 0.5 * w);
        left += w;
    }
    Ok(Grid1D {
        centers,
        widths,
        xmin,
        xmax,
    })
}

/// Ghost states just outside the domain for the given boundary kind.
pub fn ghost_states(field: &[ConsState], bc: BoundaryKind) -> (ConsState, ConsState) {
    let n = field.len();
    match bc {
        BoundaryKind::Periodic => (field[n - 1], field[0]),
        BoundaryKind::Outflow => (field[0], field[n - 1]),
    }
}

/// Ghost cell widths matching `ghost_states`.
pub fn ghost_widths(grid: &Grid1D, bc: BoundaryKind) -> (f64, f64) {
    let n = grid.n();
    match bc {
        BoundaryKind::Periodic => (grid.widths[n - 1], grid.widths[0]),
        BoundaryKind::Outflow => (grid.widths[0], grid.widths[n - 1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_examples() {
        let g = make_uniform_grid(4, 0.0, 1.0).unwrap();
        assert!(g.widths.iter().all(|&w| w == 0.25));
        let g = make_uniform_grid(100, 0.0, 1.0).unwrap();
        assert!((g.widths[17] - 0.01).abs() < 1e-16);
        for (i, &c) in g.centers.iter().enumerate() {
            assert!((c - (i as f64 + 0.5) * 0.01).abs() < 1e-14);
        }
        assert!(make_uniform_grid(1, 0.0, 1.0).is_err());
        assert!(make_uniform_grid(4, 1.0, 0.0).is_err());
    }

    #[test]
    fn stretched_grid_two_cells() {
        let g = make_stretched_grid(2, 0.0, 1.0, 10.0).unwrap();
        assert!((g.widths[0] - 1.0 / 11.0).abs() < 1e-15);
        assert!((g.widths[1] - 10.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn stretched_grid_ratio_one_is_uniform() {
        let g = make_stretched_grid(8, -1.0, 1.0, 1.0).unwrap();
        assert!(g.widths.iter().all(|&w| (w - 0.25).abs() < 1e-15));
    }

    #[test]
    fn stretched_grid_reproduces_ratio_and_extent() {
        let g = make_stretched_grid(100, -1.0, 1.0, 10.0).unwrap();
        let max = g.widths.iter().cloned().fold(0.0, f64::max);
        let min = g.widths.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((max / min - 10.0).abs() < 1e-12);
        let total: f64 = g.widths.iter().sum();
        assert!((total - 2.0).abs() < 1e-12);
        assert!(g.widths.windows(2).all(|w| w[1] > w[0]));
        assert!(g.centers.windows(2).all(|c| c[1] > c[0]));
    }

    #[test]
    fn ghost_state_examples() {
        let mk = |rho: f64| ConsState {
            rho,
            energy: 1.0,
            ..Default::default()
        };
        let field = vec![mk(1.0), mk(2.0), mk(3.0)];
        let (l, r) = ghost_states(&field, BoundaryKind::Periodic);
        assert_eq!(l.rho, 3.0);
        assert_eq!(r.rho, 1.0);
        let (l, r) = ghost_states(&field, BoundaryKind::Outflow);
        assert_eq!(l.rho, 1.0);
        assert_eq!(r.rho, 3.0);

        // Two-cell periodic field: ghosts swap.
        let two = vec![mk(5.0), mk(7.0)];
        let (l, r) = ghost_states(&two, BoundaryKind::Periodic);
        assert_eq!(l.rho, 7.0);
        assert_eq!(r.rho, 5.0);

        // Uniform field: ghosts equal the interior value for both kinds.
        let uni = vec![mk(4.0); 6];
        for bc in [BoundaryKind::Periodic, BoundaryKind::Outflow] {
            let (l, r) = ghost_states(&uni, bc);
            assert_eq!(l.rho, 4.0);
            assert_eq!(r.rho, 4.0);
        }
    }
}
