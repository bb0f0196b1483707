//! State representations, conversions, and pointwise entropy quantities
//! for the ideal MHD system with an ideal gas law.

use crate::error::Error;

/// Density and pressure below this threshold are treated as solver
/// breakdown rather than physical states.
pub const VALIDITY_FLOOR: f64 = 1e-14;

/// 8x8 matrix in conserved-variable ordering.
pub type Mat8 = [[f64; 8]; 8];

/// Coordinate direction of a flux, source, or eigensystem evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
    Z,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::X, Direction::Y, Direction::Z];
}

/// Interface flux families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FluxKind {
    /// Entropy conserving flux.
    Ec,
    /// Entropy and kinetic energy conserving flux.
    Ekec,
    /// Entropy stable flux with Roe-type dissipation.
    EsRoe,
    /// Entropy stable flux with local Lax-Friedrichs type dissipation.
    EsLlf,
}

/// Primitive variables (rho, u, v, w, p, B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub p: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

/// Conserved variables (rho, momentum, total energy density, B).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConsState {
    pub rho: f64,
    pub mom1: f64,
    pub mom2: f64,
    pub mom3: f64,
    pub energy: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

/// Pointwise entropy function, entropy fluxes, and entropy potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyQuantities {
    /// Physical entropy ln(p) - gamma ln(rho).
    pub s: f64,
    /// Entropy density -rho s / (gamma - 1).
    pub entropy: f64,
    /// Directional entropy fluxes u U, v U, w U.
    pub flux_x: f64,
    pub flux_y: f64,
    pub flux_z: f64,
    /// Entropy potentials phi_d = v . f_d - (entropy flux)_d.
    pub phi_x: f64,
    pub phi_y: f64,
    pub phi_z: f64,
}

/// Parameter vector used by the entropy conserving flux algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamVector {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    pub z4: f64,
    pub z5: f64,
    pub z6: f64,
    pub z7: f64,
    pub z8: f64,
}

/// Grid requested by a run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    Uniform1D { n: usize, xmin: f64, xmax: f64 },
    Stretched1D { n: usize, xmin: f64, xmax: f64, ratio: f64 },
    Uniform2D { nx: usize, ny: usize, xmin: f64, xmax: f64, ymin: f64, ymax: f64 },
}

/// Scalar solver parameters shared by every kernel of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub gamma: f64,
    pub cfl: f64,
    pub flux_kind: FluxKind,
    pub bc_kind: crate::grid::BoundaryKind,
    pub t_final: f64,
    pub grid: GridSpec,
}

impl PrimState {
    pub fn new(rho: f64, u: f64, v: f64, w: f64, p: f64, b1: f64, b2: f64, b3: f64) -> Self {
        Self { rho, u, v, w, p, b1, b2, b3 }
    }

    pub fn velocity_squared(&self) -> f64 {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    pub fn b_squared(&self) -> f64 {
        self.b1 * self.b1 + self.b2 * self.b2 + self.b3 * self.b3
    }

    pub fn u_dot_b(&self) -> f64 {
        self.u * self.b1 + self.v * self.b2 + self.w * self.b3
    }

    pub fn is_valid(&self) -> bool {
        self.rho > VALIDITY_FLOOR
            && self.p > VALIDITY_FLOOR
            && self.rho.is_finite()
            && self.u.is_finite()
            && self.v.is_finite()
            && self.w.is_finite()
            && self.p.is_finite()
            && self.b1.is_finite()
            && self.b2.is_finite()
            && self.b3.is_finite()
    }

    /// Parameter vector z of the entropy conserving flux.
    pub fn param_vector(&self) -> ParamVector {
        let z1 = (self.rho / self.p).sqrt();
        ParamVector {
            z1,
            z2: z1 * self.u,
            z3: z1 * self.v,
            z4: z1 * self.w,
            z5: (self.rho * self.p).sqrt(),
            z6: self.b1,
            z7: self.b2,
            z8: self.b3,
        }
    }

    /// Relabel the components so `direction` plays the role of x.
    ///
    /// The normal velocity/field pair moves into the (u, b1) slots, the
    /// tangential pairs follow cyclically, so every x-direction kernel
    /// serves all three directions.
    pub fn permute_to(&self, direction: Direction) -> PrimState {
        match direction {
            Direction::X => *self,
            Direction::Y => PrimState {
                rho: self.rho,
                u: self.v,
                v: self.w,
                w: self.u,
                p: self.p,
                b1: self.b2,
                b2: self.b3,
                b3: self.b1,
            },
            Direction::Z => PrimState {
                rho: self.rho,
                u: self.w,
                v: self.u,
                w: self.v,
                p: self.p,
                b1: self.b3,
                b2: self.b1,
                b3: self.b2,
            },
        }
    }
}

/// Component map from the x-frame of `direction` back to lab components:
/// lab component `j` equals frame component `FROM[j]`.
pub(crate) fn unpermute_map(direction: Direction) -> [usize; 8] {
    match direction {
        Direction::X => [0, 1, 2, 3, 4, 5, 6, 7],
        Direction::Y => [0, 3, 1, 2, 4, 7, 5, 6],
        Direction::Z => [0, 2, 3, 1, 4, 6, 7, 5],
    }
}

/// Map an 8-vector computed in the x-frame of `direction` back to lab
/// component ordering.
pub fn unpermute_vec(frame: [f64; 8], direction: Direction) -> [f64; 8] {
    let map = unpermute_map(direction);
    let mut out = [0.0; 8];
    for j in 0..8 {
        out[j] = frame[map[j]];
    }
    out
}

impl ConsState {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.rho, self.mom1, self.mom2, self.mom3, self.energy, self.b1, self.b2, self.b3,
        ]
    }

    pub fn from_array(q: [f64; 8]) -> Self {
        Self {
            rho: q[0],
            mom1: q[1],
            mom2: q[2],
            mom3: q[3],
            energy: q[4],
            b1: q[5],
            b2: q[6],
            b3: q[7],
        }
    }
}

impl std::ops::Add for ConsState {
    type Output = ConsState;
    fn add(self, rhs: ConsState) -> ConsState {
        ConsState {
            rho: self.rho + rhs.rho,
            mom1: self.mom1 + rhs.mom1,
            mom2: self.mom2 + rhs.mom2,
            mom3: self.mom3 + rhs.mom3,
            energy: self.energy + rhs.energy,
            b1: self.b1 + rhs.b1,
            b2: self.b2 + rhs.b2,
            b3: self.b3 + rhs.b3,
        }
    }
}

impl std::ops::Mul<f64> for ConsState {
    type Output = ConsState;
    fn mul(self, c: f64) -> ConsState {
        ConsState {
            rho: self.rho * c,
            mom1: self.mom1 * c,
            mom2: self.mom2 * c,
            mom3: self.mom3 * c,
            energy: self.energy * c,
            b1: self.b1 * c,
            b2: self.b2 * c,
            b3: self.b3 * c,
        }
    }
}

/// Convert primitive to conserved variables.
pub fn prim_to_cons(p: &PrimState, gamma: f64) -> ConsState {
    ConsState {
        rho: p.rho,
        mom1: p.rho * p.u,
        mom2: p.rho * p.v,
        mom3: p.rho * p.w,
        energy: p.p / (gamma - 1.0) + 0.5 * p.rho * p.velocity_squared() + 0.5 * p.b_squared(),
        b1: p.b1,
        b2: p.b2,
        b3: p.b3,
    }
}

/// Convert conserved to primitive variables, rejecting states whose
/// density or recovered pressure falls below the validity floor.
pub fn cons_to_prim(q: &ConsState, gamma: f64) -> Result<PrimState, Error> {
    if !(q.rho > VALIDITY_FLOOR) {
        return Err(Error::NonPositiveDensity { rho: q.rho });
    }
    let u = q.mom1 / q.rho;
    let v = q.mom2 / q.rho;
    let w = q.mom3 / q.rho;
    let kinetic = 0.5 * q.rho * (u * u + v * v + w * w);
    let magnetic = 0.5 * (q.b1 * q.b1 + q.b2 * q.b2 + q.b3 * q.b3);
    let p = (gamma - 1.0) * (q.energy - kinetic - magnetic);
    if !(p > VALIDITY_FLOOR) {
        return Err(Error::NonPositivePressure { p });
    }
    Ok(PrimState {
        rho: q.rho,
        u,
        v,
        w,
        p,
        b1: q.b1,
        b2: q.b2,
        b3: q.b3,
    })
}

/// Entropy variables v = dU/dq for the entropy density U = -rho s/(gamma-1).
pub fn entropy_vars(q: &ConsState, gamma: f64) -> Result<[f64; 8], Error> {
    let pr = cons_to_prim(q, gamma)?;
    Ok(entropy_vars_prim(&pr, gamma))
}

/// Entropy variables evaluated directly from primitives.
pub fn entropy_vars_prim(pr: &PrimState, gamma: f64) -> [f64; 8] {
    let s = pr.p.ln() - gamma * pr.rho.ln();
    let rho_over_p = pr.rho / pr.p;
    [
        (gamma - s) / (gamma - 1.0) - 0.5 * rho_over_p * pr.velocity_squared(),
        rho_over_p * pr.u,
        rho_over_p * pr.v,
        rho_over_p * pr.w,
        -rho_over_p,
        rho_over_p * pr.b1,
        rho_over_p * pr.b2,
        rho_over_p * pr.b3,
    ]
}

/// Entropy density, directional entropy fluxes, and entropy potentials.
pub fn entropy_quantities(q: &ConsState, gamma: f64) -> Result<EntropyQuantities, Error> {
    let pr = cons_to_prim(q, gamma)?;
    Ok(entropy_quantities_prim(&pr, gamma))
}

pub fn entropy_quantities_prim(pr: &PrimState, gamma: f64) -> EntropyQuantities {
    let s = pr.p.ln() - gamma * pr.rho.ln();
    let entropy = -pr.rho * s / (gamma - 1.0);
    let b_sq_over_2p = 0.5 * pr.b_squared() / pr.p;
    let udotb_over_p = pr.u_dot_b() / pr.p;
    let phi = |vel: f64, b_d: f64| pr.rho * vel + pr.rho * vel * b_sq_over_2p - pr.rho * b_d * udotb_over_p;
    EntropyQuantities {
        s,
        entropy,
        flux_x: pr.u * entropy,
        flux_y: pr.v * entropy,
        flux_z: pr.w * entropy,
        phi_x: phi(pr.u, pr.b1),
        phi_y: phi(pr.v, pr.b2),
        phi_z: phi(pr.w, pr.b3),
    }
}

/// Symmetric positive definite entropy Jacobian H = dq/dv.
pub fn entropy_jacobian(pr: &PrimState, gamma: f64) -> Mat8 {
    let rho = pr.rho;
    let (u, v, w) = (pr.u, pr.v, pr.w);
    let p = pr.p;
    let vel_sq = pr.velocity_squared();
    let b_sq = pr.b_squared();
    let a_sq = gamma * p / rho;
    let rho_e = p / (gamma - 1.0) + 0.5 * rho * vel_sq + 0.5 * b_sq;
    // Total enthalpy of the hydrodynamic part.
    let h = a_sq / (gamma - 1.0) + 0.5 * vel_sq;
    let e_minus = rho_e - 0.5 * b_sq;
    let p_over_rho = p / rho;

    let mut m = [[0.0; 8]; 8];
    m[0] = [rho, rho * u, rho * v, rho * w, e_minus, 0.0, 0.0, 0.0];
    m[1] = [rho * u, rho * u * u + p, rho * u * v, rho * u * w, rho * h * u, 0.0, 0.0, 0.0];
    m[2] = [rho * v, rho * u * v, rho * v * v + p, rho * v * w, rho * h * v, 0.0, 0.0, 0.0];
    m[3] = [rho * w, rho * u * w, rho * v * w, rho * w * w + p, rho * h * w, 0.0, 0.0, 0.0];
    m[4] = [
        e_minus,
        rho * h * u,
        rho * h * v,
        rho * h * w,
        rho * h * h - a_sq * p / (gamma - 1.0) + a_sq * b_sq / gamma,
        p_over_rho * pr.b1,
        p_over_rho * pr.b2,
        p_over_rho * pr.b3,
    ];
    m[5] = [0.0, 0.0, 0.0, 0.0, p_over_rho * pr.b1, p_over_rho, 0.0, 0.0];
    m[6] = [0.0, 0.0, 0.0, 0.0, p_over_rho * pr.b2, 0.0, p_over_rho, 0.0];
    m[7] = [0.0, 0.0, 0.0, 0.0, p_over_rho * pr.b3, 0.0, 0.0, p_over_rho];
    m
}

/// Physical flux of the ideal MHD system in the requested direction.
pub fn physical_flux(pr: &PrimState, gamma: f64, direction: Direction) -> [f64; 8] {
    let f = physical_flux_x(&pr.permute_to(direction), gamma);
    unpermute_vec(f, direction)
}

fn physical_flux_x(pr: &PrimState, gamma: f64) -> [f64; 8] {
    let b_sq = pr.b_squared();
    let ptot = pr.p + 0.5 * b_sq;
    let rho_e = pr.p / (gamma - 1.0) + 0.5 * pr.rho * pr.velocity_squared() + 0.5 * b_sq;
    [
        pr.rho * pr.u,
        pr.rho * pr.u * pr.u + ptot - pr.b1 * pr.b1,
        pr.rho * pr.u * pr.v - pr.b1 * pr.b2,
        pr.rho * pr.u * pr.w - pr.b1 * pr.b3,
        pr.u * (rho_e + ptot) - pr.b1 * pr.u_dot_b(),
        0.0,
        pr.u * pr.b2 - pr.v * pr.b1,
        pr.u * pr.b3 - pr.w * pr.b1,
    ]
}
