//! Eigenstructure of the source-augmented flux Jacobian and the two
//! entropy stable dissipation operators built on top of it.

use crate::error::Error;
use crate::flux::ec_flux;
use crate::state::{
    entropy_jacobian, entropy_vars_prim, unpermute_map, Direction, Mat8, PrimState,
};

/// Characteristic speeds of ideal MHD in one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    /// Sound speed.
    pub a: f64,
    /// Alfven speed |b_d|.
    pub c_a: f64,
    /// Fast magnetoacoustic speed.
    pub c_f: f64,
    /// Slow magnetoacoustic speed.
    pub c_s: f64,
    /// Scaled field b = B/sqrt(rho), in the direction frame.
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b_perp: f64,
}

/// Eigenvalues, scaled right eigenvectors, and the diagonal scaling whose
/// congruence reproduces the entropy Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    /// Eigenvalues in column order (-f, -a, -s, E, D, +s, +a, +f).
    pub lambda: [f64; 8],
    /// Scaled right eigenvectors, one per column.
    pub rhat: Mat8,
    /// Diagonal scaling; H = rhat * diag(scaling) * rhat^T.
    pub scaling: [f64; 8],
    pub alpha_f: f64,
    pub alpha_s: f64,
    /// Normalized tangential field components in the direction frame.
    pub beta2: f64,
    pub beta3: f64,
}

/// Characteristic wave speeds in the requested direction.
pub fn wave_speeds(pr: &PrimState, gamma: f64, direction: Direction) -> WaveSpeeds {
    let f = pr.permute_to(direction);
    let sqrt_rho = f.rho.sqrt();
    let b1 = f.b1 / sqrt_rho;
    let b2 = f.b2 / sqrt_rho;
    let b3 = f.b3 / sqrt_rho;
    let b_sq = b1 * b1 + b2 * b2 + b3 * b3;
    let a_sq = gamma * f.p / f.rho;
    // The discriminant is nonnegative in exact arithmetic; clamp rounding.
    let disc = ((a_sq + b_sq) * (a_sq + b_sq) - 4.0 * a_sq * b1 * b1).max(0.0);
    let root = disc.sqrt();
    let c_f_sq = 0.5 * (a_sq + b_sq + root);
    let c_s_sq = (0.5 * (a_sq + b_sq - root)).max(0.0);
    WaveSpeeds {
        a: a_sq.sqrt(),
        c_a: b1.abs(),
        c_f: c_f_sq.sqrt(),
        c_s: c_s_sq.sqrt(),
        b1,
        b2,
        b3,
        b_perp: (b2 * b2 + b3 * b3).sqrt(),
    }
}

/// Largest characteristic speed |u_d| + c_f.
pub fn max_wave_speed(pr: &PrimState, gamma: f64, direction: Direction) -> f64 {
    let vel = match direction {
        Direction::X => pr.u,
        Direction::Y => pr.v,
        Direction::Z => pr.w,
    };
    vel.abs() + wave_speeds(pr, gamma, direction).c_f
}

/// Eigendecomposition of the source-augmented flux Jacobian with the
/// entropy scaling applied.
pub fn eigen_system(pr: &PrimState, gamma: f64, direction: Direction) -> EigenSystem {
    let f = pr.permute_to(direction);
    let ws = wave_speeds(pr, gamma, direction);
    let rho = f.rho;
    let sqrt_rho = rho.sqrt();
    let a = ws.a;
    let a_sq = a * a;
    let (c_f, c_s) = (ws.c_f, ws.c_s);
    let vel_sq = f.velocity_squared();

    // Degenerate tangential field: the normalized components may be chosen
    // arbitrarily as long as beta2^2 + beta3^2 = 1.
    let b_norm = (ws.b1 * ws.b1 + ws.b_perp * ws.b_perp).sqrt();
    let (beta2, beta3) = if ws.b_perp > 1e-12 * b_norm.max(1.0) {
        (ws.b2 / ws.b_perp, ws.b3 / ws.b_perp)
    } else {
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    };
    let sgn_b1 = if ws.b1 >= 0.0 { 1.0 } else { -1.0 };

    // Near the triple point c_f ~ c_s both ratios degenerate; floor the
    // denominator and renormalize so alpha_f^2 + alpha_s^2 = 1 holds.
    let den = (c_f * c_f - c_s * c_s).max(1e-14);
    let af_sq = ((a_sq - c_s * c_s) / den).max(0.0);
    let as_sq = ((c_f * c_f - a_sq) / den).max(0.0);
    let norm = af_sq + as_sq;
    let (alpha_f, alpha_s) = if norm < 1e-7 {
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    } else {
        ((af_sq / norm).sqrt(), (as_sq / norm).sqrt())
    };

    let u_vel = f.u;
    let lambda = [
        u_vel - c_f,
        u_vel - ws.b1,
        u_vel - c_s,
        u_vel,
        u_vel,
        u_vel + c_s,
        u_vel + ws.b1,
        u_vel + c_f,
    ];

    // Columns in the direction frame. The Alfven columns carry the
    // normalized beta components; the b_perp factor that relates them to
    // the raw eigenvectors is folded into the scaling entry, which keeps
    // the congruence finite as b_perp -> 0.
    let entropy_col = [1.0, f.u, f.v, f.w, 0.5 * vel_sq, 0.0, 0.0, 0.0];
    let divergence_col = [0.0, 0.0, 0.0, 0.0, sqrt_rho * ws.b1, 1.0, 0.0, 0.0];
    let rho32 = rho * sqrt_rho;
    // sign = -1 pairs with eigenvalue u - b1, sign = +1 with u + b1.
    let alfven_col = |sign: f64| {
        [
            0.0,
            0.0,
            sign * rho32 * beta3,
            -sign * rho32 * beta2,
            -sign * rho32 * (beta2 * f.w - beta3 * f.v),
            0.0,
            -rho * beta3,
            rho * beta2,
        ]
    };
    let psi_f = |sign: f64| {
        0.5 * alpha_f * rho * vel_sq + a * alpha_s * rho * ws.b_perp
            + alpha_f * rho * a_sq / (gamma - 1.0)
            + sign * alpha_f * c_f * rho * f.u
            - sign * alpha_s * c_s * rho * sgn_b1 * (f.v * beta2 + f.w * beta3)
    };
    let fast_col = |sign: f64| {
        [
            alpha_f * rho,
            alpha_f * rho * (f.u + sign * c_f),
            rho * (alpha_f * f.v - sign * alpha_s * c_s * beta2 * sgn_b1),
            rho * (alpha_f * f.w - sign * alpha_s * c_s * beta3 * sgn_b1),
            psi_f(sign),
            0.0,
            alpha_s * a * beta2 * sqrt_rho,
            alpha_s * a * beta3 * sqrt_rho,
        ]
    };
    let psi_s = |sign: f64| {
        0.5 * alpha_s * rho * vel_sq - a * alpha_f * rho * ws.b_perp
            + alpha_s * rho * a_sq / (gamma - 1.0)
            + sign * alpha_s * c_s * rho * f.u
            + sign * alpha_f * c_f * rho * sgn_b1 * (f.v * beta2 + f.w * beta3)
    };
    let slow_col = |sign: f64| {
        [
            alpha_s * rho,
            alpha_s * rho * (f.u + sign * c_s),
            rho * (alpha_s * f.v + sign * alpha_f * c_f * beta2 * sgn_b1),
            rho * (alpha_s * f.w + sign * alpha_f * c_f * beta3 * sgn_b1),
            psi_s(sign),
            0.0,
            -alpha_f * a * beta2 * sqrt_rho,
            -alpha_f * a * beta3 * sqrt_rho,
        ]
    };

    let cols = [
        fast_col(-1.0),
        alfven_col(-1.0),
        slow_col(-1.0),
        entropy_col,
        divergence_col,
        slow_col(1.0),
        alfven_col(1.0),
        fast_col(1.0),
    ];

    // Map rows from the direction frame back to lab component order.
    let map = unpermute_map(direction);
    let mut rhat = [[0.0; 8]; 8];
    for row in 0..8 {
        for col in 0..8 {
            rhat[row][col] = cols[col][map[row]];
        }
    }

    let mag_scale = 1.0 / (2.0 * rho * gamma);
    let alfven_scale = f.p / (2.0 * rho * rho * rho);
    let scaling = [
        mag_scale,
        alfven_scale,
        mag_scale,
        rho * (gamma - 1.0) / gamma,
        f.p / rho,
        mag_scale,
        alfven_scale,
        mag_scale,
    ];

    EigenSystem {
        lambda,
        rhat,
        scaling,
        alpha_f,
        alpha_s,
        beta2,
        beta3,
    }
}

impl EigenSystem {
    /// Apply rhat |Lambda| diag(scaling) rhat^T to a vector.
    pub fn dissipation_apply(&self, v_jump: &[f64; 8]) -> [f64; 8] {
        let mut weights = [0.0; 8];
        for col in 0..8 {
            let mut dot = 0.0;
            for row in 0..8 {
                dot += self.rhat[row][col] * v_jump[row];
            }
            weights[col] = self.lambda[col].abs() * self.scaling[col] * dot;
        }
        let mut out = [0.0; 8];
        for row in 0..8 {
            let mut sum = 0.0;
            for col in 0..8 {
                sum += self.rhat[row][col] * weights[col];
            }
            out[row] = sum;
        }
        out
    }

    /// Congruence rhat diag(scaling) rhat^T, the operator the Merriam
    /// identity equates with the entropy Jacobian.
    pub fn congruence(&self) -> Mat8 {
        let mut out = [[0.0; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let mut sum = 0.0;
                for k in 0..8 {
                    sum += self.rhat[i][k] * self.scaling[k] * self.rhat[j][k];
                }
                out[i][j] = sum;
            }
        }
        out
    }
}

fn mean_state(p_l: &PrimState, p_r: &PrimState) -> PrimState {
    PrimState {
        rho: 0.5 * (p_l.rho + p_r.rho),
        u: 0.5 * (p_l.u + p_r.u),
        v: 0.5 * (p_l.v + p_r.v),
        w: 0.5 * (p_l.w + p_r.w),
        p: 0.5 * (p_l.p + p_r.p),
        b1: 0.5 * (p_l.b1 + p_r.b1),
        b2: 0.5 * (p_l.b2 + p_r.b2),
        b3: 0.5 * (p_l.b3 + p_r.b3),
    }
}

/// Entropy stable flux with Roe-type dissipation evaluated at the
/// arithmetic mean of the interface states.
pub fn es_roe_flux(
    p_l: &PrimState,
    p_r: &PrimState,
    gamma: f64,
    direction: Direction,
) -> Result<[f64; 8], Error> {
    let mut f = ec_flux(p_l, p_r, gamma, direction)?;
    let mean = mean_state(p_l, p_r);
    let eig = eigen_system(&mean, gamma, direction);
    let v_l = entropy_vars_prim(p_l, gamma);
    let v_r = entropy_vars_prim(p_r, gamma);
    let mut v_jump = [0.0; 8];
    for k in 0..8 {
        v_jump[k] = v_r[k] - v_l[k];
    }
    let diss = eig.dissipation_apply(&v_jump);
    for k in 0..8 {
        f[k] -= 0.5 * diss[k];
    }
    Ok(f)
}

/// Entropy stable flux with local Lax-Friedrichs type dissipation
/// |lambda_max| H applied to the entropy variable jump.
pub fn es_llf_flux(
    p_l: &PrimState,
    p_r: &PrimState,
    gamma: f64,
    direction: Direction,
) -> Result<[f64; 8], Error> {
    let mut f = ec_flux(p_l, p_r, gamma, direction)?;
    let mean = mean_state(p_l, p_r);
    let lambda_max = max_wave_speed(&mean, gamma, direction);
    let h = entropy_jacobian(&mean, gamma);
    let v_l = entropy_vars_prim(p_l, gamma);
    let v_r = entropy_vars_prim(p_r, gamma);
    let mut v_jump = [0.0; 8];
    for k in 0..8 {
        v_jump[k] = v_r[k] - v_l[k];
    }
    for row in 0..8 {
        let mut hv = 0.0;
        for col in 0..8 {
            hv += h[row][col] * v_jump[col];
        }
        f[row] -= 0.5 * lambda_max * hv;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flux::janhunen_interface_source;
    use crate::state::{physical_flux, prim_to_cons, ConsState, FluxKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_prim(rng: &mut impl Rng) -> PrimState {
        PrimState::new(
            rng.gen_range(0.1..10.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..10.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    }

    fn random_prim_bperp(rng: &mut impl Rng) -> PrimState {
        loop {
            let pr = random_prim(rng);
            let ok = Direction::ALL.iter().all(|&d| {
                wave_speeds(&pr, 1.4, d).b_perp > 1e-3
            });
            if ok {
                return pr;
            }
        }
    }

    #[test]
    fn wave_speed_examples() {
        let acoustic = PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0);
        let ws = wave_speeds(&acoustic, 2.0, Direction::X);
        assert!((ws.a - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(ws.c_a, 0.0);
        assert!((ws.c_f - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(ws.c_s, 0.0);

        // Vanishing tangential field factorizes the quartic.
        let aligned = PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0);
        let ws = wave_speeds(&aligned, 2.0, Direction::X);
        assert!((ws.c_f * ws.c_f - 4.0).abs() < 1e-13);
        assert!((ws.c_s * ws.c_s - 2.0).abs() < 1e-13);

        let bw_left = PrimState::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0);
        let ws = wave_speeds(&bw_left, 2.0, Direction::X);
        assert!((ws.c_a - 0.75).abs() < 1e-15);
        assert!((ws.c_f - 1.79228).abs() < 1e-5, "c_f = {}", ws.c_f);
        assert!((ws.c_s - 0.59180).abs() < 1e-5, "c_s = {}", ws.c_s);
        assert!((ws.c_f * ws.c_s - 1.06066).abs() < 1e-5);
    }

    #[test]
    fn wave_speed_ordering_and_product_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..1000 {
            let pr = random_prim(&mut rng);
            for dir in Direction::ALL {
                let ws = wave_speeds(&pr, 1.4, dir);
                assert!(0.0 <= ws.c_s && ws.c_s <= ws.c_a + 1e-13 && ws.c_a <= ws.c_f + 1e-13);
                let lhs = ws.c_f * ws.c_s;
                let rhs = ws.a * ws.c_a;
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
            }
        }
    }

    #[test]
    fn merriam_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..1000 {
            let gamma = 5.0 / 3.0;
            let pr = random_prim_bperp(&mut rng);
            for dir in Direction::ALL {
                let eig = eigen_system(&pr, gamma, dir);
                let cong = eig.congruence();
                let h = entropy_jacobian(&pr, gamma);
                let mut err: f64 = 0.0;
                let mut scale: f64 = 0.0;
                for i in 0..8 {
                    let row_err: f64 = (0..8).map(|j| (cong[i][j] - h[i][j]).abs()).sum();
                    let row_mag: f64 = (0..8).map(|j| h[i][j].abs()).sum();
                    err = err.max(row_err);
                    scale = scale.max(row_mag);
                }
                assert!(err <= 1e-10 * scale, "{dir:?}: {err:e} vs scale {scale:e}");
            }
        }
    }

    /// Finite-difference Jacobian of the physical flux plus the divergence
    /// column of the symmetrizing source, the operator the eigensystem
    /// diagonalizes.
    fn augmented_jacobian(pr: &PrimState, gamma: f64, dir: Direction) -> Mat8 {
        let q0 = prim_to_cons(pr, gamma).as_array();
        let mut jac = [[0.0; 8]; 8];
        for k in 0..8 {
            let h = 1e-6 * (1.0 + q0[k].abs());
            let mut qp = q0;
            let mut qm = q0;
            qp[k] += h;
            qm[k] -= h;
            let pp = crate::state::cons_to_prim(&ConsState::from_array(qp), gamma).unwrap();
            let pm = crate::state::cons_to_prim(&ConsState::from_array(qm), gamma).unwrap();
            let fp = physical_flux(&pp, gamma, dir);
            let fm = physical_flux(&pm, gamma, dir);
            for row in 0..8 {
                jac[row][k] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        // Source column sits at the row/column of the direction-normal
        // field component.
        let col = match dir {
            Direction::X => 5,
            Direction::Y => 6,
            Direction::Z => 7,
        };
        let powell = [
            0.0,
            pr.b1,
            pr.b2,
            pr.b3,
            pr.u_dot_b(),
            pr.u,
            pr.v,
            pr.w,
        ];
        for row in 0..8 {
            jac[row][col] += powell[row];
        }
        jac
    }

    #[test]
    fn eigen_relation_against_finite_difference_jacobian() {
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        for _ in 0..200 {
            let gamma = 1.4;
            let pr = random_prim_bperp(&mut rng);
            for dir in Direction::ALL {
                let jac = augmented_jacobian(&pr, gamma, dir);
                let eig = eigen_system(&pr, gamma, dir);
                let mut scale: f64 = 1.0;
                for col in 0..8 {
                    for row in 0..8 {
                        scale = scale.max((eig.lambda[col] * eig.rhat[row][col]).abs());
                    }
                }
                for col in 0..8 {
                    for row in 0..8 {
                        let mut ar = 0.0;
                        for k in 0..8 {
                            ar += jac[row][k] * eig.rhat[k][col];
                        }
                        let rl = eig.rhat[row][col] * eig.lambda[col];
                        assert!(
                            (ar - rl).abs() <= 1e-5 * scale,
                            "{dir:?} col {col} row {row}: {ar} vs {rl}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_field_limit() {
        let pr = PrimState::new(1.3, 0.4, -0.2, 0.9, 2.0, 0.0, 0.0, 0.0);
        let eig = eigen_system(&pr, 1.4, Direction::X);
        assert_eq!(eig.lambda[3], pr.u);
        assert_eq!(eig.lambda[4], pr.u);
        assert!((eig.alpha_f - 1.0).abs() < 1e-12);
        assert!(eig.alpha_s.abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_set_matches_wave_speeds() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        for _ in 0..200 {
            let pr = random_prim(&mut rng);
            for dir in Direction::ALL {
                let ws = wave_speeds(&pr, 1.4, dir);
                let vel = match dir {
                    Direction::X => pr.u,
                    Direction::Y => pr.v,
                    Direction::Z => pr.w,
                };
                let mut expect = [
                    vel - ws.c_f,
                    vel - ws.c_a,
                    vel - ws.c_s,
                    vel,
                    vel,
                    vel + ws.c_s,
                    vel + ws.c_a,
                    vel + ws.c_f,
                ];
                let mut got = eigen_system(&pr, 1.4, dir).lambda;
                expect.sort_by(f64::total_cmp);
                got.sort_by(f64::total_cmp);
                for k in 0..8 {
                    assert!((expect[k] - got[k]).abs() <= 1e-12 * (1.0 + expect[k].abs()));
                }
            }
        }
    }

    #[test]
    fn es_fluxes_reduce_to_physical_flux_for_identical_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        for _ in 0..100 {
            let pr = random_prim(&mut rng);
            for dir in Direction::ALL {
                let phys = physical_flux(&pr, 1.4, dir);
                for flux in [
                    es_roe_flux(&pr, &pr, 1.4, dir).unwrap(),
                    es_llf_flux(&pr, &pr, 1.4, dir).unwrap(),
                ] {
                    for k in 0..8 {
                        assert!((flux[k] - phys[k]).abs() <= 1e-13 * (1.0 + phys[k].abs()));
                    }
                }
            }
        }
    }

    #[test]
    fn dissipation_quadratic_forms_are_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        for _ in 0..1000 {
            let gamma = 5.0 / 3.0;
            let l = random_prim(&mut rng);
            let r = random_prim(&mut rng);
            let mean = mean_state(&l, &r);
            let v_l = entropy_vars_prim(&l, gamma);
            let v_r = entropy_vars_prim(&r, gamma);
            let mut v_jump = [0.0; 8];
            for k in 0..8 {
                v_jump[k] = v_r[k] - v_l[k];
            }
            let eig = eigen_system(&mean, gamma, Direction::X);
            let diss = eig.dissipation_apply(&v_jump);
            let quad: f64 = (0..8).map(|k| v_jump[k] * diss[k]).sum();
            assert!(quad >= -1e-11 * quad.abs().max(1.0), "roe quad {quad:e}");

            let h = entropy_jacobian(&mean, gamma);
            let quad_h: f64 = (0..8)
                .map(|i| v_jump[i] * (0..8).map(|j| h[i][j] * v_jump[j]).sum::<f64>())
                .sum();
            assert!(quad_h >= 0.0, "llf quad {quad_h:e}");
        }
    }

    #[test]
    fn interface_entropy_production_is_nonpositive() {
        let mut rng = ChaCha8Rng::seed_from_u64(137);
        for _ in 0..2000 {
            let gamma = 1.4;
            let (l, r) = crate::flux::tests::random_same_sign_pair(&mut rng);
            let dx_l = rng.gen_range(0.5..2.0);
            let dx_r = rng.gen_range(0.5..2.0);
            for dir in Direction::ALL {
                for kind in [FluxKind::EsRoe, FluxKind::EsLlf] {
                    let f = match kind {
                        FluxKind::EsRoe => es_roe_flux(&l, &r, gamma, dir).unwrap(),
                        _ => es_llf_flux(&l, &r, gamma, dir).unwrap(),
                    };
                    let s = janhunen_interface_source(&l, &r, dx_l, dx_r, dir);
                    let res = crate::flux::tests::entropy_condition_residual(
                        &l, &r, dx_l, dx_r, gamma, dir, &f, &s,
                    );
                    assert!(res <= 1e-11, "{kind:?} {dir:?} production {res:e}");
                }
            }
        }
    }
}
