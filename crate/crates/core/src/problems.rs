//! Canonical test problems: initial conditions, the smooth manufactured
//! solution with its analytic source, and per-problem defaults.

use crate::error::Error;
use crate::grid::{BoundaryKind, Grid1D, Grid2D};
use crate::integrate::{Field1D, Field2D};
use crate::state::{prim_to_cons, PrimState};

/// Identifiers of the built-in problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Manufactured,
    BrioWu,
    RyuJones,
    Torrilhon,
    ShockTube25D,
    Rotor1,
}

/// Defaults a problem carries: adiabatic index, domain, final time, and
/// the boundary treatment it is usually run with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub gamma: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub t_final: f64,
    pub default_bc: BoundaryKind,
    pub two_dimensional: bool,
}

impl ProblemSpec {
    pub fn of(id: ProblemId) -> ProblemSpec {
        match id {
            ProblemId::Manufactured => ProblemSpec {
                id,
                gamma: 5.0 / 3.0,
                xmin: -1.0,
                xmax: 1.0,
                ymin: 0.0,
                ymax: 0.0,
                t_final: 2.0,
                default_bc: BoundaryKind::Periodic,
                two_dimensional: false,
            },
            ProblemId::BrioWu => ProblemSpec {
                id,
                gamma: 2.0,
                xmin: 0.0,
                xmax: 1.0,
                ymin: 0.0,
                ymax: 0.0,
                t_final: 0.12,
                default_bc: BoundaryKind::Outflow,
                two_dimensional: false,
            },
            ProblemId::RyuJones => ProblemSpec {
                id,
                gamma: 5.0 / 3.0,
                xmin: -1.0,
                xmax: 1.0,
                ymin: 0.0,
                ymax: 0.0,
                t_final: 0.4,
                default_bc: BoundaryKind::Outflow,
                two_dimensional: false,
            },
            ProblemId::Torrilhon => ProblemSpec {
                id,
                gamma: 5.0 / 3.0,
                xmin: -1.0,
                xmax: 1.5,
                ymin: 0.0,
                ymax: 0.0,
                t_final: 0.4,
                default_bc: BoundaryKind::Outflow,
                two_dimensional: false,
            },
            ProblemId::ShockTube25D => ProblemSpec {
                id,
                gamma: 5.0 / 3.0,
                xmin: 0.0,
                xmax: 1.0,
                ymin: 0.0,
                ymax: 1.0,
                t_final: 0.2,
                default_bc: BoundaryKind::Periodic,
                two_dimensional: true,
            },
            ProblemId::Rotor1 => ProblemSpec {
                id,
                gamma: 1.4,
                xmin: 0.0,
                xmax: 1.0,
                ymin: 0.0,
                ymax: 1.0,
                t_final: 0.15,
                default_bc: BoundaryKind::Periodic,
                two_dimensional: true,
            },
        }
    }

    /// Left/right primitive data of the 1D Riemann problems and the
    /// position of the initial discontinuity.
    pub fn riemann_data(&self) -> Option<(PrimState, PrimState, f64)> {
        match self.id {
            ProblemId::BrioWu => Some((
                PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0),
                PrimState::new(0.125, 0.0, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0),
                0.5,
            )),
            ProblemId::RyuJones => Some((
                PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.7, 0.0, 0.0),
                PrimState::new(0.3, 0.0, 0.0, 1.0, 0.2, 0.7, 1.0, 0.0),
                0.0,
            )),
            ProblemId::Torrilhon => Some((
                PrimState::new(3.0, 0.0, 0.0, 0.0, 3.0, 1.5, 1.0, 0.0),
                PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 1.5, 1.5f64.cos(), 1.5f64.sin()),
                0.0,
            )),
            _ => None,
        }
    }
}

/// Smooth traveling-wave solution used for convergence studies.
pub fn manufactured_state(x: f64, t: f64) -> PrimState {
    let rho = 2.0 + (2.0 * std::f64::consts::PI * (x - t)).sin();
    PrimState::new(rho, 1.0, 1.0, 1.0, rho * rho, 1.0, rho, rho)
}

/// Analytic source balancing the manufactured solution. Independent of
/// the adiabatic index.
pub fn manufactured_source(x: f64, t: f64) -> [f64; 8] {
    let two_pi = 2.0 * std::f64::consts::PI;
    let rho = 2.0 + (two_pi * (x - t)).sin();
    let rho_x = two_pi * (two_pi * (x - t)).cos();
    [
        0.0,
        4.0 * rho * rho_x,
        -rho_x,
        -rho_x,
        4.0 * rho * rho_x - 2.0 * rho_x,
        0.0,
        0.0,
        0.0,
    ]
}

fn check_1d_domain(spec: &ProblemSpec, grid: &Grid1D) -> Result<(), Error> {
    let tol = 1e-12 * (spec.xmax - spec.xmin);
    if (grid.xmin - spec.xmin).abs() > tol || (grid.xmax - spec.xmax).abs() > tol {
        return Err(Error::DomainMismatch {
            expected: (spec.xmin, spec.xmax),
            got: (grid.xmin, grid.xmax),
        });
    }
    Ok(())
}

/// Piecewise-constant Riemann data sampled at cell centers.
pub fn init_riemann(spec: &ProblemSpec, grid: &Grid1D, gamma: f64) -> Result<Field1D, Error> {
    let (left, right, split) = spec
        .riemann_data()
        .ok_or(Error::DomainMismatch {
            expected: (spec.xmin, spec.xmax),
            got: (grid.xmin, grid.xmax),
        })?;
    check_1d_domain(spec, grid)?;
    Ok(grid
        .centers
        .iter()
        .map(|&x| prim_to_cons(if x <= split { &left } else { &right }, gamma))
        .collect())
}

/// Manufactured solution sampled at cell centers at time `t`.
pub fn init_manufactured(grid: &Grid1D, gamma: f64, t: f64) -> Field1D {
    grid.centers
        .iter()
        .map(|&x| prim_to_cons(&manufactured_state(x, t), gamma))
        .collect()
}

/// Rotated shock tube with all velocity and field components active. The
/// discontinuity lies along x + y = 1/2; cells take the side of their
/// center, with the pattern extended as a function of (x + y) mod 1 so
/// the data is consistent with the periodic boundaries it is run with.
pub fn init_shock_tube_25d(grid: &Grid2D, gamma: f64) -> Result<Field2D, Error> {
    let spec = ProblemSpec::of(ProblemId::ShockTube25D);
    check_2d_domain(&spec, grid)?;
    let sqrt_4pi = (4.0 * std::f64::consts::PI).sqrt();
    let left = PrimState::new(
        1.08,
        1.2,
        0.01,
        0.5,
        0.95,
        2.0 / sqrt_4pi,
        2.0 / sqrt_4pi,
        3.6 / sqrt_4pi,
    );
    let right = PrimState::new(
        1.0,
        0.0,
        0.0,
        0.0,
        1.0,
        2.0 / sqrt_4pi,
        4.0 / sqrt_4pi,
        2.0 / sqrt_4pi,
    );
    let mut field = Field2D::new(grid.nx, grid.ny, prim_to_cons(&right, gamma));
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let s = (grid.x_center(i) + grid.y_center(j)).rem_euclid(1.0);
            let state = if s < 0.5 { &left } else { &right };
            field.set(i, j, prim_to_cons(state, gamma));
        }
    }
    Ok(field)
}

/// Dense rotating disk in a light ambient fluid threaded by a uniform
/// field, with a taper between the inner and outer radii.
pub fn init_rotor(grid: &Grid2D, gamma: f64) -> Result<Field2D, Error> {
    let spec = ProblemSpec::of(ProblemId::Rotor1);
    check_2d_domain(&spec, grid)?;
    let (r0, r1, u0) = (0.1, 0.115, 2.0);
    let b1 = 5.0 / (4.0 * std::f64::consts::PI).sqrt();
    let mut field = Field2D::new(grid.nx, grid.ny, Default::default());
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let dx = grid.x_center(i) - 0.5;
            let dy = grid.y_center(j) - 0.5;
            let r = (dx * dx + dy * dy).sqrt();
            let (rho, u, v) = if r < r0 {
                (10.0, -u0 / r0 * dy, u0 / r0 * dx)
            } else if r < r1 {
                let f = (r1 - r) / (r1 - r0);
                (1.0 + 9.0 * f, -f * u0 / r * dy, f * u0 / r * dx)
            } else {
                (1.0, 0.0, 0.0)
            };
            let pr = PrimState::new(rho, u, v, 0.0, 1.0, b1, 0.0, 0.0);
            field.set(i, j, prim_to_cons(&pr, gamma));
        }
    }
    Ok(field)
}

fn check_2d_domain(spec: &ProblemSpec, grid: &Grid2D) -> Result<(), Error> {
    let tol = 1e-12;
    if (grid.xmin - spec.xmin).abs() > tol
        || (grid.xmax - spec.xmax).abs() > tol
        || (grid.ymin - spec.ymin).abs() > tol
        || (grid.ymax - spec.ymax).abs() > tol
    {
        return Err(Error::DomainMismatch {
            expected: (spec.xmin, spec.xmax),
            got: (grid.xmin, grid.xmax),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_uniform_grid, Grid2D};
    use crate::state::{cons_to_prim, physical_flux, prim_to_cons, ConsState, Direction};

    #[test]
    fn manufactured_pointwise_values() {
        let pr = manufactured_state(0.25, 0.0);
        assert!((pr.rho - 3.0).abs() < 1e-14);
        assert!((pr.p - 9.0).abs() < 1e-14);
        assert!((pr.b1 - 1.0).abs() < 1e-14);
        assert!((pr.b2 - 3.0).abs() < 1e-14);
        assert!((pr.b3 - 3.0).abs() < 1e-14);

        let s = manufactured_source(0.0, 0.0);
        assert!((s[1] - 16.0 * std::f64::consts::PI).abs() < 1e-12);
        let rho_x = 2.0 * std::f64::consts::PI;
        assert!((s[2] + rho_x).abs() < 1e-12);
    }

    #[test]
    fn manufactured_residual_vanishes() {
        // dq/dt + df/dx - s = 0 with derivatives from central differences
        // of the exact fields.
        let gamma = 5.0 / 3.0;
        let h = 1e-6;
        for &(x, t) in &[(0.0, 0.0), (0.3, 0.7), (-0.62, 1.4), (0.95, 0.11)] {
            let q_t = |t: f64| prim_to_cons(&manufactured_state(x, t), gamma).as_array();
            let f_x = |x: f64| {
                physical_flux(&manufactured_state(x, t), gamma, Direction::X)
            };
            let s = manufactured_source(x, t);
            let qp = q_t(t + h);
            let qm = q_t(t - h);
            let fp = f_x(x + h);
            let fm = f_x(x - h);
            for k in 0..8 {
                let dq_dt = (qp[k] - qm[k]) / (2.0 * h);
                let df_dx = (fp[k] - fm[k]) / (2.0 * h);
                let resid = dq_dt + df_dx - s[k];
                let scale = dq_dt.abs().max(df_dx.abs()).max(1.0);
                assert!(
                    resid.abs() <= 1e-8 * scale,
                    "row {k} at ({x},{t}): residual {resid:e}"
                );
            }
        }
    }

    #[test]
    fn riemann_initial_data() {
        let gamma = 2.0;
        let spec = ProblemSpec::of(ProblemId::BrioWu);
        let grid = make_uniform_grid(10, 0.0, 1.0).unwrap();
        let field = init_riemann(&spec, &grid, gamma).unwrap();
        let first = cons_to_prim(&field[0], gamma).unwrap();
        assert_eq!(first.rho, 1.0);
        assert_eq!(first.p, 1.0);
        let last = cons_to_prim(&field[9], gamma).unwrap();
        assert_eq!(last.rho, 0.125);
        assert!((last.p - 0.1).abs() < 1e-15);
        // B1 constant across the domain.
        assert!(field.iter().all(|q| q.b1 == 0.75));
        // Cell centers at 0.45 and 0.55 straddle the discontinuity; the
        // cell with center exactly on the split takes the left side.
        let g2 = make_uniform_grid(2, 0.0, 1.0).unwrap();
        let f2 = init_riemann(&spec, &g2, gamma).unwrap();
        assert_eq!(f2[0].rho, 1.0);
        assert_eq!(f2[1].rho, 0.125);

        let ryu = ProblemSpec::of(ProblemId::RyuJones);
        let grid = make_uniform_grid(10, -1.0, 1.0).unwrap();
        let field = init_riemann(&ryu, &grid, 5.0 / 3.0).unwrap();
        let right = cons_to_prim(&field[9], 5.0 / 3.0).unwrap();
        assert!((right.w - 1.0).abs() < 1e-15);
        assert!(field.iter().all(|q| (q.b1 - 0.7).abs() < 1e-15));

        let tor = ProblemSpec::of(ProblemId::Torrilhon);
        let grid = make_uniform_grid(10, -1.0, 1.5).unwrap();
        let field = init_riemann(&tor, &grid, 5.0 / 3.0).unwrap();
        let right = cons_to_prim(&field[9], 5.0 / 3.0).unwrap();
        assert!((right.b2 - 1.5f64.cos()).abs() < 1e-15);
        assert!((right.b3 - 1.5f64.sin()).abs() < 1e-15);

        // Wrong domain is rejected.
        let bad = make_uniform_grid(10, 0.0, 2.0).unwrap();
        assert!(matches!(
            init_riemann(&spec, &bad, gamma),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn shock_tube_25d_initial_data() {
        let gamma = 5.0 / 3.0;
        let grid = Grid2D::new(50, 50, 0.0, 1.0, 0.0, 1.0).unwrap();
        let field = init_shock_tube_25d(&grid, gamma).unwrap();
        let b_unit = 2.0 / (4.0 * std::f64::consts::PI).sqrt();
        assert!((b_unit - 0.5641895835477563).abs() < 1e-15);
        let corner = cons_to_prim(field.get(0, 0), gamma).unwrap();
        assert!((corner.rho - 1.08).abs() < 1e-15);
        assert!((corner.b3 - 1.8 * b_unit).abs() < 1e-14);
        let far = cons_to_prim(field.get(49, 49), gamma).unwrap();
        assert_eq!(far.rho, 1.0);
        assert!((far.b2 - 2.0 * b_unit).abs() < 1e-14);
        // Center of the domain sits in the periodic image of the left
        // band (x + y in [1, 1.5)).
        let mid = cons_to_prim(field.get(30, 30), gamma).unwrap();
        assert!((mid.rho - 1.08).abs() < 1e-15);
        // Band membership follows (x + y) mod 1 on both sides of the wrap.
        let wrap_lo = cons_to_prim(field.get(24, 0), gamma).unwrap();
        let wrap_hi = cons_to_prim(field.get(24, 49), gamma).unwrap();
        assert_eq!(wrap_lo.rho, 1.0); // x + y = 0.5 exactly: right band
        assert!((wrap_hi.rho - 1.08).abs() < 1e-15); // x + y = 1.48: left band
        // All initial states valid.
        assert!(field.data.iter().all(|q| cons_to_prim(q, gamma).is_ok()));
    }

    #[test]
    fn rotor_initial_data() {
        let gamma = 1.4;
        let grid = Grid2D::new(64, 64, 0.0, 1.0, 0.0, 1.0).unwrap();
        let field = init_rotor(&grid, gamma).unwrap();
        let center = cons_to_prim(field.get(32, 32), gamma).unwrap();
        assert_eq!(center.rho, 10.0);
        let corner = cons_to_prim(field.get(0, 0), gamma).unwrap();
        assert_eq!(corner.rho, 1.0);
        assert_eq!(corner.u, 0.0);
        assert_eq!(corner.v, 0.0);
        // Swirl speed in the disk is bounded by u0.
        for q in &field.data {
            let pr = cons_to_prim(q, gamma).unwrap();
            let speed = (pr.u * pr.u + pr.v * pr.v).sqrt();
            assert!(speed <= 2.0 + 1e-12);
            assert_eq!(pr.w, 0.0);
            assert!((pr.p - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rotor_taper_is_continuous() {
        // Inner and taper formulas agree at r0, taper vanishes at r1.
        let (r0, r1, u0) = (0.1f64, 0.115, 2.0);
        for &angle in &[0.0, 0.7, 2.1] {
            let (dx, dy) = (r0 * f64::cos(angle), r0 * f64::sin(angle));
            let inner = ((-u0 / r0 * dy).powi(2) + (u0 / r0 * dx).powi(2)).sqrt();
            let f = (r1 - r0) / (r1 - r0);
            let taper = f * u0 / r0 * r0;
            assert!((inner - u0).abs() < 1e-14);
            assert!((taper - u0).abs() < 1e-14);
            let f_at_r1 = (r1 - r1) / (r1 - r0);
            assert_eq!(f_at_r1 * u0, 0.0);
        }
    }

    #[test]
    fn initial_fields_are_valid_states() {
        for id in [ProblemId::BrioWu, ProblemId::RyuJones, ProblemId::Torrilhon] {
            let spec = ProblemSpec::of(id);
            let grid = make_uniform_grid(64, spec.xmin, spec.xmax).unwrap();
            let field = init_riemann(&spec, &grid, spec.gamma).unwrap();
            assert!(field.iter().all(|q| cons_to_prim(q, spec.gamma).is_ok()));
        }
        let grid = make_uniform_grid(64, -1.0, 1.0).unwrap();
        let field = init_manufactured(&grid, 5.0 / 3.0, 0.0);
        assert!(field
            .iter()
            .all(|q: &ConsState| cons_to_prim(q, 5.0 / 3.0).is_ok()));
    }
}
