//! Entropy conserving interface fluxes and the nonconservative source
//! discretization that together satisfy the discrete entropy condition.

use crate::error::Error;
use crate::means::{avg, jump, log_mean};
use crate::state::{unpermute_vec, Direction, ParamVector, PrimState};

/// Averaged quantities entering the entropy conserving flux, evaluated in
/// the x-frame of the requested direction.
#[derive(Debug, Clone, Copy)]
pub struct EcAverages {
    pub rho_hat: f64,
    pub u1_hat: f64,
    pub v1_hat: f64,
    pub w1_hat: f64,
    pub p1_hat: f64,
    pub p2_hat: f64,
    pub u2_hat: f64,
    pub v2_hat: f64,
    pub w2_hat: f64,
    pub b1_hat: f64,
    pub b2_hat: f64,
    pub b3_hat: f64,
    pub b1_ring: f64,
    pub b2_ring: f64,
    pub b3_ring: f64,
    pub b1b2_hat: f64,
    pub b1b3_hat: f64,
    pub b2b3_hat: f64,
}

impl EcAverages {
    /// Means and hats computed in the fixed order: parameter vector per
    /// side, then arithmetic/logarithmic means, then hats. The order keeps
    /// results bit-reproducible across runs.
    pub fn new(z_l: &ParamVector, z_r: &ParamVector, gamma: f64) -> Result<Self, Error> {
        let z1 = avg(z_l.z1, z_r.z1);
        let z2 = avg(z_l.z2, z_r.z2);
        let z3 = avg(z_l.z3, z_r.z3);
        let z4 = avg(z_l.z4, z_r.z4);
        let z5 = avg(z_l.z5, z_r.z5);
        let z1_sq = avg(z_l.z1 * z_l.z1, z_r.z1 * z_r.z1);
        let z1z2 = avg(z_l.z1 * z_l.z2, z_r.z1 * z_r.z2);
        let z1z3 = avg(z_l.z1 * z_l.z3, z_r.z1 * z_r.z3);
        let z1z4 = avg(z_l.z1 * z_l.z4, z_r.z1 * z_r.z4);
        let z1_ln = log_mean(z_l.z1, z_r.z1)?;
        let z5_ln = log_mean(z_l.z5, z_r.z5)?;
        Ok(EcAverages {
            rho_hat: z1 * z5_ln,
            u1_hat: z2 / z1,
            v1_hat: z3 / z1,
            w1_hat: z4 / z1,
            p1_hat: z5 / z1,
            p2_hat: (gamma + 1.0) / (2.0 * gamma) * z5_ln / z1_ln
                + (gamma - 1.0) / (2.0 * gamma) * z5 / z1,
            u2_hat: z1z2 / z1_sq,
            v2_hat: z1z3 / z1_sq,
            w2_hat: z1z4 / z1_sq,
            b1_hat: avg(z_l.z6, z_r.z6),
            b2_hat: avg(z_l.z7, z_r.z7),
            b3_hat: avg(z_l.z8, z_r.z8),
            b1_ring: avg(z_l.z6 * z_l.z6, z_r.z6 * z_r.z6),
            b2_ring: avg(z_l.z7 * z_l.z7, z_r.z7 * z_r.z7),
            b3_ring: avg(z_l.z8 * z_l.z8, z_r.z8 * z_r.z8),
            b1b2_hat: avg(z_l.z6 * z_l.z7, z_r.z6 * z_r.z7),
            b1b3_hat: avg(z_l.z6 * z_l.z8, z_r.z6 * z_r.z8),
            b2b3_hat: avg(z_l.z7 * z_l.z8, z_r.z7 * z_r.z8),
        })
    }
}

/// Inverse-temperature averages used by the kinetic energy conserving flux.
#[derive(Debug, Clone, Copy)]
pub struct BetaAverages {
    pub beta_avg: f64,
    pub beta_ln: f64,
    pub beta_u: f64,
    pub beta_v: f64,
    pub beta_w: f64,
}

impl BetaAverages {
    pub fn new(p_l: &PrimState, p_r: &PrimState) -> Result<Self, Error> {
        let beta_l = 0.5 * p_l.rho / p_l.p;
        let beta_r = 0.5 * p_r.rho / p_r.p;
        Ok(BetaAverages {
            beta_avg: avg(beta_l, beta_r),
            beta_ln: log_mean(beta_l, beta_r)?,
            beta_u: avg(beta_l * p_l.u, beta_r * p_r.u),
            beta_v: avg(beta_l * p_l.v, beta_r * p_r.v),
            beta_w: avg(beta_l * p_l.w, beta_r * p_r.w),
        })
    }
}

/// Per-interface contribution of the divergence-advecting source term.
///
/// Only the magnetic field rows are populated; the cell update receives
/// half of the contribution from each of its two interfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSource {
    pub s6: f64,
    pub s7: f64,
    pub s8: f64,
    pub direction: Direction,
    /// Jump of the direction-normal field component across the interface.
    pub b_jump: f64,
    /// Rows zeroed because the weighted denominator degenerated.
    pub degenerate_rows: u8,
}

impl InterfaceSource {
    pub fn as_vec(&self) -> [f64; 8] {
        unpermute_vec(
            [0.0, 0.0, 0.0, 0.0, 0.0, self.s6, self.s7, self.s8],
            self.direction,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.s6 == 0.0 && self.s7 == 0.0 && self.s8 == 0.0
    }
}

/// Entropy conserving numerical flux.
pub fn ec_flux(
    p_l: &PrimState,
    p_r: &PrimState,
    gamma: f64,
    direction: Direction,
) -> Result<[f64; 8], Error> {
    let zl = p_l.permute_to(direction).param_vector();
    let zr = p_r.permute_to(direction).param_vector();
    let h = EcAverages::new(&zl, &zr, gamma)?;
    Ok(unpermute_vec(ec_flux_frame(&h, gamma), direction))
}

fn ec_flux_frame(h: &EcAverages, gamma: f64) -> [f64; 8] {
    let ring_sum = 0.5 * (h.b1_ring + h.b2_ring + h.b3_ring);
    [
        h.rho_hat * h.u1_hat,
        h.p1_hat + h.rho_hat * h.u1_hat * h.u1_hat + ring_sum - h.b1_ring,
        h.rho_hat * h.u1_hat * h.v1_hat - h.b1b2_hat,
        h.rho_hat * h.u1_hat * h.w1_hat - h.b1b3_hat,
        gamma * h.u1_hat * h.p2_hat / (gamma - 1.0)
            + 0.5
                * h.rho_hat
                * h.u1_hat
                * (h.u1_hat * h.u1_hat + h.v1_hat * h.v1_hat + h.w1_hat * h.w1_hat)
            + h.u2_hat * (h.b2_hat * h.b2_hat + h.b3_hat * h.b3_hat)
            - h.b1_hat * (h.v2_hat * h.b2_hat + h.w2_hat * h.b3_hat),
        0.0,
        h.u2_hat * h.b2_hat - h.v2_hat * h.b1_hat,
        h.u2_hat * h.b3_hat - h.w2_hat * h.b1_hat,
    ]
}

/// Entropy and kinetic energy conserving numerical flux.
pub fn ekec_flux(
    p_l: &PrimState,
    p_r: &PrimState,
    gamma: f64,
    direction: Direction,
) -> Result<[f64; 8], Error> {
    let pl = p_l.permute_to(direction);
    let pr = p_r.permute_to(direction);
    Ok(unpermute_vec(ekec_flux_frame(&pl, &pr, gamma)?, direction))
}

fn ekec_flux_frame(pl: &PrimState, pr: &PrimState, gamma: f64) -> Result<[f64; 8], Error> {
    let rho_ln = log_mean(pl.rho, pr.rho)?;
    let b = BetaAverages::new(pl, pr)?;
    let rho = avg(pl.rho, pr.rho);
    let u = avg(pl.u, pr.u);
    let v = avg(pl.v, pr.v);
    let w = avg(pl.w, pr.w);
    let u_sq = avg(pl.u * pl.u, pr.u * pr.u);
    let v_sq = avg(pl.v * pl.v, pr.v * pr.v);
    let w_sq = avg(pl.w * pl.w, pr.w * pr.w);
    let b1 = avg(pl.b1, pr.b1);
    let b2 = avg(pl.b2, pr.b2);
    let b3 = avg(pl.b3, pr.b3);
    let b1_sq = avg(pl.b1 * pl.b1, pr.b1 * pr.b1);
    let b2_sq = avg(pl.b2 * pl.b2, pr.b2 * pr.b2);
    let b3_sq = avg(pl.b3 * pl.b3, pr.b3 * pr.b3);
    let b1b2 = avg(pl.b1 * pl.b2, pr.b1 * pr.b2);
    let b1b3 = avg(pl.b1 * pl.b3, pr.b1 * pr.b3);
    let p_tilde = 0.5 * rho / b.beta_avg;
    let induction2 = (b.beta_u * b2 - b.beta_v * b1) / b.beta_avg;
    let induction3 = (b.beta_u * b3 - b.beta_w * b1) / b.beta_avg;
    let f1 = rho_ln * u;
    Ok([
        f1,
        f1 * u + p_tilde + 0.5 * (b1_sq + b2_sq + b3_sq) - b1_sq,
        f1 * v - b1b2,
        f1 * w - b1b3,
        f1 / (2.0 * (gamma - 1.0) * b.beta_ln) + p_tilde * u
            - 0.5 * f1 * (u_sq + v_sq + w_sq)
            + f1 * (u * u + v * v + w * w)
            + b2 * induction2
            + b3 * induction3,
        0.0,
        induction2,
        induction3,
    ])
}

/// Threshold below which a source denominator counts as degenerate and the
/// corresponding row is zeroed.
const DEGENERATE_REL: f64 = 1e-12;

/// Source discretization paired with the entropy conserving flux.
pub fn janhunen_interface_source(
    p_l: &PrimState,
    p_r: &PrimState,
    dx_l: f64,
    dx_r: f64,
    direction: Direction,
) -> InterfaceSource {
    let zl = p_l.permute_to(direction).param_vector();
    let zr = p_r.permute_to(direction).param_vector();
    let b_jump = jump(zl.z6, zr.z6);
    if b_jump == 0.0 {
        return InterfaceSource {
            s6: 0.0,
            s7: 0.0,
            s8: 0.0,
            direction,
            b_jump,
            degenerate_rows: 0,
        };
    }
    let mut degenerate_rows = 0;
    let mut row = |mom: (f64, f64), b_pair: (f64, f64)| -> f64 {
        let numer = avg(zl.z1 * mom.0, zr.z1 * mom.1) * avg(b_pair.0, b_pair.1);
        let wl = dx_l * zl.z1 * zl.z1 * b_pair.0;
        let wr = dx_r * zr.z1 * zr.z1 * b_pair.1;
        let denom = avg(wl, wr);
        if denom.abs() <= DEGENERATE_REL * wl.abs().max(wr.abs()) {
            degenerate_rows += 1;
            0.0
        } else {
            -b_jump * numer / denom
        }
    };
    let s6 = row((zl.z2, zr.z2), (zl.z6, zr.z6));
    let s7 = row((zl.z3, zr.z3), (zl.z7, zr.z7));
    let s8 = row((zl.z4, zr.z4), (zl.z8, zr.z8));
    InterfaceSource {
        s6,
        s7,
        s8,
        direction,
        b_jump,
        degenerate_rows,
    }
}

/// Beta-weighted form of the source discretization used with the EKEC
/// flux. Algebraically identical to the parameter-vector form.
pub fn ekec_interface_source(
    p_l: &PrimState,
    p_r: &PrimState,
    dx_l: f64,
    dx_r: f64,
    direction: Direction,
) -> InterfaceSource {
    let pl = p_l.permute_to(direction);
    let pr = p_r.permute_to(direction);
    let beta_l = 0.5 * pl.rho / pl.p;
    let beta_r = 0.5 * pr.rho / pr.p;
    let b_jump = jump(pl.b1, pr.b1);
    if b_jump == 0.0 {
        return InterfaceSource {
            s6: 0.0,
            s7: 0.0,
            s8: 0.0,
            direction,
            b_jump,
            degenerate_rows: 0,
        };
    }
    let mut degenerate_rows = 0;
    let mut row = |vel: (f64, f64), b_pair: (f64, f64)| -> f64 {
        let numer = avg(beta_l * vel.0, beta_r * vel.1) * avg(b_pair.0, b_pair.1);
        let wl = dx_l * beta_l * b_pair.0;
        let wr = dx_r * beta_r * b_pair.1;
        let denom = avg(wl, wr);
        if denom.abs() <= DEGENERATE_REL * wl.abs().max(wr.abs()) {
            degenerate_rows += 1;
            0.0
        } else {
            -b_jump * numer / denom
        }
    };
    let s6 = row((pl.u, pr.u), (pl.b1, pr.b1));
    let s7 = row((pl.v, pr.v), (pl.b2, pr.b2));
    let s8 = row((pl.w, pr.w), (pl.b3, pr.b3));
    InterfaceSource {
        s6,
        s7,
        s8,
        direction,
        b_jump,
        degenerate_rows,
    }
}

/// Interface source matching the flux family: the EKEC flux carries the
/// beta-weighted discretization, every other family the parameter-vector
/// form.
pub fn interface_source(
    kind: crate::state::FluxKind,
    p_l: &PrimState,
    p_r: &PrimState,
    dx_l: f64,
    dx_r: f64,
    direction: Direction,
) -> InterfaceSource {
    match kind {
        crate::state::FluxKind::Ekec => ekec_interface_source(p_l, p_r, dx_l, dx_r, direction),
        _ => janhunen_interface_source(p_l, p_r, dx_l, dx_r, direction),
    }
}
