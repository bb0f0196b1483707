//! Semidiscrete finite volume right-hand sides and explicit Runge-Kutta
//! time integrators with CFL step control.

use rayon::prelude::*;

use crate::dissipation::{es_llf_flux, es_roe_flux, max_wave_speed};
use crate::error::Error;
use crate::flux::{ec_flux, ekec_flux, interface_source};
use crate::grid::{ghost_states, ghost_widths, BoundaryKind, Grid1D, Grid2D};
use crate::state::{cons_to_prim, ConsState, Direction, FluxKind, PrimState};

/// One conserved state per cell.
pub type Field1D = Vec<ConsState>;

/// Row-major field on a uniform 2D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub nx: usize,
    pub ny: usize,
    pub data: Vec<ConsState>,
}

impl Field2D {
    pub fn new(nx: usize, ny: usize, fill: ConsState) -> Self {
        Field2D {
            nx,
            ny,
            data: vec![fill; nx * ny],
        }
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &ConsState {
        &self.data[j * self.nx + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, q: ConsState) {
        let k = self.idx(i, j);
        self.data[k] = q;
    }
}

/// Time integration schemes used by the experiment drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkScheme {
    /// Five-stage fourth-order low-storage scheme.
    Lserk45,
    /// Heun's second-order scheme.
    Rk2,
}

/// 2N-storage coefficients of the five-stage fourth-order scheme.
const LSERK_A: [f64; 5] = [
    0.0,
    -567_301_805_773.0 / 1_357_537_059_087.0,
    -2_404_267_990_393.0 / 2_016_746_695_238.0,
    -3_550_918_686_646.0 / 2_091_501_179_385.0,
    -1_275_806_237_668.0 / 842_570_457_699.0,
];
const LSERK_B: [f64; 5] = [
    1_432_997_174_477.0 / 9_575_080_441_755.0,
    5_161_836_677_717.0 / 13_612_068_292_357.0,
    1_720_146_321_549.0 / 2_090_206_949_498.0,
    3_134_564_353_537.0 / 4_481_467_310_338.0,
    2_277_821_191_437.0 / 14_882_151_754_819.0,
];
const LSERK_C: [f64; 5] = [
    0.0,
    1_432_997_174_477.0 / 9_575_080_441_755.0,
    2_526_269_341_429.0 / 6_820_363_962_896.0,
    2_006_345_519_317.0 / 3_224_310_063_776.0,
    2_802_321_613_138.0 / 2_924_317_926_251.0,
];

/// State vectors a Runge-Kutta scheme can advance.
pub trait RkState: Clone {
    fn scale_in_place(&mut self, c: f64);
    fn add_scaled(&mut self, c: f64, other: &Self);
}

impl RkState for Vec<f64> {
    fn scale_in_place(&mut self, c: f64) {
        for x in self.iter_mut() {
            *x *= c;
        }
    }

    fn add_scaled(&mut self, c: f64, other: &Self) {
        for (x, y) in self.iter_mut().zip(other) {
            *x += c * y;
        }
    }
}

impl RkState for Field1D {
    fn scale_in_place(&mut self, c: f64) {
        for q in self.iter_mut() {
            *q = *q * c;
        }
    }

    fn add_scaled(&mut self, c: f64, other: &Self) {
        for (q, r) in self.iter_mut().zip(other) {
            *q = *q + *r * c;
        }
    }
}

impl RkState for Field2D {
    fn scale_in_place(&mut self, c: f64) {
        for q in self.data.iter_mut() {
            *q = *q * c;
        }
    }

    fn add_scaled(&mut self, c: f64, other: &Self) {
        for (q, r) in self.data.iter_mut().zip(&other.data) {
            *q = *q + *r * c;
        }
    }
}

/// One step of the low-storage five-stage fourth-order scheme.
pub fn lserk45_step<S, F>(q: &mut S, t: f64, dt: f64, mut rhs: F) -> Result<(), Error>
where
    S: RkState,
    F: FnMut(&S, f64) -> Result<S, Error>,
{
    let mut dq: Option<S> = None;
    for stage in 0..5 {
        let mut r = rhs(q, t + LSERK_C[stage] * dt)?;
        r.scale_in_place(dt);
        match dq.as_mut() {
            None => dq = Some(r),
            Some(d) => {
                d.scale_in_place(LSERK_A[stage]);
                d.add_scaled(1.0, &r);
            }
        }
        q.add_scaled(LSERK_B[stage], dq.as_ref().unwrap());
    }
    Ok(())
}

/// One step of Heun's second-order scheme.
pub fn rk2_step<S, F>(q: &mut S, t: f64, dt: f64, mut rhs: F) -> Result<(), Error>
where
    S: RkState,
    F: FnMut(&S, f64) -> Result<S, Error>,
{
    let r0 = rhs(q, t)?;
    let mut predictor = q.clone();
    predictor.add_scaled(dt, &r0);
    let r1 = rhs(&predictor, t + dt)?;
    q.add_scaled(0.5 * dt, &r0);
    q.add_scaled(0.5 * dt, &r1);
    Ok(())
}

/// Interface flux of the requested family.
pub fn numerical_flux(
    kind: FluxKind,
    p_l: &PrimState,
    p_r: &PrimState,
    gamma: f64,
    direction: Direction,
) -> Result<[f64; 8], Error> {
    match kind {
        FluxKind::Ec => ec_flux(p_l, p_r, gamma, direction),
        FluxKind::Ekec => ekec_flux(p_l, p_r, gamma, direction),
        FluxKind::EsRoe => es_roe_flux(p_l, p_r, gamma, direction),
        FluxKind::EsLlf => es_llf_flux(p_l, p_r, gamma, direction),
    }
}

/// Optional analytic source evaluated at cell centers.
pub type ExtraSource<'a> = Option<&'a (dyn Fn(f64, f64) -> [f64; 8] + Sync)>;

fn prims_of(field: &[ConsState], gamma: f64, t: f64) -> Result<Vec<PrimState>, Error> {
    field
        .iter()
        .enumerate()
        .map(|(cell, q)| {
            cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
                cell,
                time: t,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Interfaces below this count are evaluated serially.
const PAR_THRESHOLD: usize = 512;

/// Semidiscrete right-hand side of the 1D scheme: flux differences plus
/// the per-interface source averaged onto each cell, plus an optional
/// analytic source at the cell centers.
///
/// Interface values are computed in an independent pass (optionally in
/// parallel) and gathered sequentially so results do not depend on the
/// thread count.
pub fn semidiscrete_rhs_1d(
    field: &[ConsState],
    grid: &Grid1D,
    gamma: f64,
    flux_kind: FluxKind,
    bc: BoundaryKind,
    t: f64,
    extra_source: ExtraSource,
) -> Result<Field1D, Error> {
    let n = field.len();
    let prims = prims_of(field, gamma, t)?;
    let (ghost_l, ghost_r) = ghost_states(field, bc);
    let ghost_l = cons_to_prim(&ghost_l, gamma).map_err(|e| Error::InvalidState {
        cell: 0,
        time: t,
        source: Box::new(e),
    })?;
    let ghost_r = cons_to_prim(&ghost_r, gamma).map_err(|e| Error::InvalidState {
        cell: n - 1,
        time: t,
        source: Box::new(e),
    })?;
    let (gw_l, gw_r) = ghost_widths(grid, bc);

    let eval = |k: usize| -> Result<([f64; 8], [f64; 8]), Error> {
        let (pl, wl) = if k == 0 {
            (&ghost_l, gw_l)
        } else {
            (&prims[k - 1], grid.widths[k - 1])
        };
        let (pr, wr) = if k == n {
            (&ghost_r, gw_r)
        } else {
            (&prims[k], grid.widths[k])
        };
        let f = numerical_flux(flux_kind, pl, pr, gamma, Direction::X)?;
        let s = interface_source(flux_kind, pl, pr, wl, wr, Direction::X).as_vec();
        Ok((f, s))
    };

    let interfaces: Vec<([f64; 8], [f64; 8])> = if n + 1 >= PAR_THRESHOLD {
        (0..n + 1)
            .into_par_iter()
            .map(eval)
            .collect::<Result<_, _>>()?
    } else {
        (0..n + 1).map(eval).collect::<Result<_, _>>()?
    };

    let mut rhs = vec![ConsState::default(); n];
    for i in 0..n {
        let (fl, sl) = &interfaces[i];
        let (fr, sr) = &interfaces[i + 1];
        let inv_dx = 1.0 / grid.widths[i];
        let mut out = [0.0; 8];
        for k in 0..8 {
            out[k] = (fl[k] - fr[k]) * inv_dx + 0.5 * (sl[k] + sr[k]);
        }
        if let Some(src) = extra_source {
            let s = src(grid.centers[i], t);
            for k in 0..8 {
                out[k] += s[k];
            }
        }
        rhs[i] = ConsState::from_array(out);
    }
    Ok(rhs)
}

/// Semidiscrete right-hand side on a uniform 2D grid, dimension by
/// dimension with direction-tagged interface sources.
pub fn semidiscrete_rhs_2d(
    field: &Field2D,
    grid: &Grid2D,
    gamma: f64,
    flux_kind: FluxKind,
    bc: BoundaryKind,
    t: f64,
) -> Result<Field2D, Error> {
    let (nx, ny) = (grid.nx, grid.ny);
    let prims: Vec<PrimState> = field
        .data
        .iter()
        .enumerate()
        .map(|(cell, q)| {
            cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
                cell,
                time: t,
                source: Box::new(e),
            })
        })
        .collect::<Result<_, _>>()?;

    let wrap = |idx: isize, count: usize| -> usize {
        match bc {
            BoundaryKind::Periodic => idx.rem_euclid(count as isize) as usize,
            BoundaryKind::Outflow => idx.clamp(0, count as isize - 1) as usize,
        }
    };

    // Interface k of row j sits between cells (k-1, j) and (k, j).
    let eval_x = |flat: usize| -> Result<([f64; 8], [f64; 8]), Error> {
        let j = flat / (nx + 1);
        let k = flat % (nx + 1);
        let il = wrap(k as isize - 1, nx);
        let ir = wrap(k as isize, nx);
        let pl = &prims[j * nx + il];
        let pr = &prims[j * nx + ir];
        let f = numerical_flux(flux_kind, pl, pr, gamma, Direction::X)?;
        let s = interface_source(flux_kind, pl, pr, grid.dx, grid.dx, Direction::X).as_vec();
        Ok((f, s))
    };
    let eval_y = |flat: usize| -> Result<([f64; 8], [f64; 8]), Error> {
        let i = flat / (ny + 1);
        let k = flat % (ny + 1);
        let jl = wrap(k as isize - 1, ny);
        let jr = wrap(k as isize, ny);
        let pl = &prims[jl * nx + i];
        let pr = &prims[jr * nx + i];
        let f = numerical_flux(flux_kind, pl, pr, gamma, Direction::Y)?;
        let s = interface_source(flux_kind, pl, pr, grid.dy, grid.dy, Direction::Y).as_vec();
        Ok((f, s))
    };

    let nxi = (nx + 1) * ny;
    let nyi = (ny + 1) * nx;
    let (x_ifaces, y_ifaces): (Vec<_>, Vec<_>) = if nxi + nyi >= PAR_THRESHOLD {
        (
            (0..nxi)
                .into_par_iter()
                .map(eval_x)
                .collect::<Result<_, _>>()?,
            (0..nyi)
                .into_par_iter()
                .map(eval_y)
                .collect::<Result<_, _>>()?,
        )
    } else {
        (
            (0..nxi).map(eval_x).collect::<Result<_, _>>()?,
            (0..nyi).map(eval_y).collect::<Result<_, _>>()?,
        )
    };

    let mut rhs = Field2D::new(nx, ny, ConsState::default());
    let inv_dx = 1.0 / grid.dx;
    let inv_dy = 1.0 / grid.dy;
    for j in 0..ny {
        for i in 0..nx {
            let (fxl, sxl) = &x_ifaces[j * (nx + 1) + i];
            let (fxr, sxr) = &x_ifaces[j * (nx + 1) + i + 1];
            let (fyl, syl) = &y_ifaces[i * (ny + 1) + j];
            let (fyr, syr) = &y_ifaces[i * (ny + 1) + j + 1];
            let mut out = [0.0; 8];
            for k in 0..8 {
                out[k] = (fxl[k] - fxr[k]) * inv_dx
                    + (fyl[k] - fyr[k]) * inv_dy
                    + 0.5 * (sxl[k] + sxr[k])
                    + 0.5 * (syl[k] + syr[k]);
            }
            rhs.set(i, j, ConsState::from_array(out));
        }
    }
    Ok(rhs)
}

/// CFL time step: cfl times the smallest cell width over local max speed.
pub fn stable_dt_1d(field: &[ConsState], grid: &Grid1D, gamma: f64, cfl: f64) -> Result<f64, Error> {
    let mut dt = f64::INFINITY;
    for (cell, q) in field.iter().enumerate() {
        let pr = cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
            cell,
            time: f64::NAN,
            source: Box::new(e),
        })?;
        let speed = max_wave_speed(&pr, gamma, Direction::X);
        dt = dt.min(grid.widths[cell] / speed);
    }
    Ok(cfl * dt)
}

/// CFL time step in 2D with additive inverse speeds per direction.
pub fn stable_dt_2d(field: &Field2D, grid: &Grid2D, gamma: f64, cfl: f64) -> Result<f64, Error> {
    let mut dt = f64::INFINITY;
    for (cell, q) in field.data.iter().enumerate() {
        let pr = cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
            cell,
            time: f64::NAN,
            source: Box::new(e),
        })?;
        let lx = max_wave_speed(&pr, gamma, Direction::X);
        let ly = max_wave_speed(&pr, gamma, Direction::Y);
        dt = dt.min(1.0 / (lx / grid.dx + ly / grid.dy));
    }
    Ok(cfl * dt)
}

fn validate_1d(field: &[ConsState], gamma: f64, t: f64) -> Result<(), Error> {
    for (cell, q) in field.iter().enumerate() {
        cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
            cell,
            time: t,
            source: Box::new(e),
        })?;
    }
    Ok(())
}

/// Advance a 1D field to `t_final` with adaptive CFL steps, clipping the
/// last step to land on the final time exactly.
pub fn advance_1d(
    field: &mut Field1D,
    grid: &Grid1D,
    gamma: f64,
    flux_kind: FluxKind,
    bc: BoundaryKind,
    cfl: f64,
    t_final: f64,
    scheme: RkScheme,
    extra_source: ExtraSource,
) -> Result<(), Error> {
    let mut t = 0.0;
    while t < t_final {
        let dt = stable_dt_1d(field, grid, gamma, cfl)?.min(t_final - t);
        let rhs = |q: &Field1D, time: f64| {
            semidiscrete_rhs_1d(q, grid, gamma, flux_kind, bc, time, extra_source)
        };
        match scheme {
            RkScheme::Lserk45 => lserk45_step(field, t, dt, rhs)?,
            RkScheme::Rk2 => rk2_step(field, t, dt, rhs)?,
        }
        t += dt;
        validate_1d(field, gamma, t)?;
    }
    Ok(())
}

/// Advance a 2D field to `t_final` with adaptive CFL steps.
pub fn advance_2d(
    field: &mut Field2D,
    grid: &Grid2D,
    gamma: f64,
    flux_kind: FluxKind,
    bc: BoundaryKind,
    cfl: f64,
    t_final: f64,
    scheme: RkScheme,
) -> Result<(), Error> {
    let mut t = 0.0;
    while t < t_final {
        let dt = stable_dt_2d(field, grid, gamma, cfl)?.min(t_final - t);
        let rhs =
            |q: &Field2D, time: f64| semidiscrete_rhs_2d(q, grid, gamma, flux_kind, bc, time);
        match scheme {
            RkScheme::Lserk45 => lserk45_step(field, t, dt, rhs)?,
            RkScheme::Rk2 => rk2_step(field, t, dt, rhs)?,
        }
        t += dt;
        for (cell, q) in field.data.iter().enumerate() {
            cons_to_prim(q, gamma).map_err(|e| Error::InvalidState {
                cell,
                time: t,
                source: Box::new(e),
            })?;
        }
    }
    Ok(())
}
