//! Exact solution of the single-gas Riemann problem: star-state iteration
//! and self-similar sampling of the full wave fan.

use crate::error::{Error, Result};

/// Primitive gas state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl PrimState {
    pub fn new(rho: f64, u: f64, p: f64) -> Result<Self> {
        if !rho.is_finite() || !u.is_finite() || !p.is_finite() || rho <= 0.0 || p <= 0.0 {
            return Err(Error::NonpositiveState(format!(
                "need rho > 0 and p > 0, got rho={rho}, u={u}, p={p}"
            )));
        }
        Ok(PrimState { rho, u, p })
    }

    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }
}

/// Velocity gain across a left (sign = -1) or right (sign = +1) wave as a
/// function of the star pressure, and its derivative.
fn wave_function(p: f64, state: &PrimState, gamma: f64) -> (f64, f64) {
    let c = state.sound_speed(gamma);
    if p > state.p {
        // Shock branch.
        let a = 2.0 / ((gamma + 1.0) * state.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * state.p;
        let root = (a / (p + b)).sqrt();
        let f = (p - state.p) * root;
        let df = root * (1.0 - 0.5 * (p - state.p) / (p + b));
        (f, df)
    } else {
        // Rarefaction branch.
        let exponent = (gamma - 1.0) / (2.0 * gamma);
        let f = 2.0 * c / (gamma - 1.0) * ((p / state.p).powf(exponent) - 1.0);
        let df = (p / state.p).powf(-(gamma + 1.0) / (2.0 * gamma)) / (state.rho * c);
        (f, df)
    }
}

/// The exact solution: star states plus everything needed to sample the fan.
#[derive(Debug, Clone, Copy)]
pub struct RiemannSolution {
    pub left: PrimState,
    pub right: PrimState,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
}

/// Density behind a wave connecting `state` to star pressure `p`.
fn star_density(p: f64, state: &PrimState, gamma: f64) -> f64 {
    let ratio = p / state.p;
    if p > state.p {
        let mu2 = (gamma - 1.0) / (gamma + 1.0);
        state.rho * (ratio + mu2) / (mu2 * ratio + 1.0)
    } else {
        state.rho * ratio.powf(1.0 / gamma)
    }
}

pub fn exact_riemann_single_gas(
    left: PrimState,
    right: PrimState,
    gamma: f64,
) -> Result<RiemannSolution> {
    if !(gamma > 1.0) {
        return Err(Error::InvalidArgument(format!("need gamma > 1, got {gamma}")));
    }
    let c_l = left.sound_speed(gamma);
    let c_r = right.sound_speed(gamma);
    if 2.0 * (c_l + c_r) / (gamma - 1.0) <= right.u - left.u {
        return Err(Error::Vacuum);
    }
    // Linearized initial guess, floored away from zero.
    let p_guess = 0.5 * (left.p + right.p)
        - 0.125 * (right.u - left.u) * (left.rho + right.rho) * (c_l + c_r);
    let mut p = p_guess.max(1e-12 * (left.p + right.p));
    let du = right.u - left.u;
    let mut converged = false;
    for _ in 0..100 {
        let (f_l, df_l) = wave_function(p, &left, gamma);
        let (f_r, df_r) = wave_function(p, &right, gamma);
        let f = f_l + f_r + du;
        let step = f / (df_l + df_r);
        let mut next = p - step;
        if next <= 0.0 {
            next = 0.5 * p;
        }
        let change = 2.0 * (next - p).abs() / (next + p);
        p = next;
        if change < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::InvariantViolation(
            "star-pressure iteration did not converge".into(),
        ));
    }
    let (f_l, _) = wave_function(p, &left, gamma);
    let (f_r, _) = wave_function(p, &right, gamma);
    let u_star = 0.5 * (left.u + right.u) + 0.5 * (f_r - f_l);
    Ok(RiemannSolution {
        left,
        right,
        gamma,
        p_star: p,
        u_star,
        rho_star_left: star_density(p, &left, gamma),
        rho_star_right: star_density(p, &right, gamma),
    })
}

/// Star pressure and velocity only.
pub fn riemann_star(left: PrimState, right: PrimState, gamma: f64) -> Result<(f64, f64)> {
    let sol = exact_riemann_single_gas(left, right, gamma)?;
    Ok((sol.p_star, sol.u_star))
}

impl RiemannSolution {
    /// State on the ray x / t = xi.
    pub fn sample(&self, xi: f64) -> PrimState {
        let g = self.gamma;
        if xi <= self.u_star {
            // Left of the contact.
            let s = &self.left;
            let c = s.sound_speed(g);
            if self.p_star > s.p {
                let shock_speed = s.u
                    - c * ((g + 1.0) / (2.0 * g) * self.p_star / s.p + (g - 1.0) / (2.0 * g))
                        .sqrt();
                if xi < shock_speed {
                    *s
                } else {
                    PrimState {
                        rho: self.rho_star_left,
                        u: self.u_star,
                        p: self.p_star,
                    }
                }
            } else {
                let c_star = c * (self.p_star / s.p).powf((g - 1.0) / (2.0 * g));
                let head = s.u - c;
                let tail = self.u_star - c_star;
                if xi < head {
                    *s
                } else if xi > tail {
                    PrimState {
                        rho: self.rho_star_left,
                        u: self.u_star,
                        p: self.p_star,
                    }
                } else {
                    let factor = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    PrimState {
                        rho: s.rho * factor.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * s.u + xi),
                        p: s.p * factor.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        } else {
            // Right of the contact: mirrored formulas.
            let s = &self.right;
            let c = s.sound_speed(g);
            if self.p_star > s.p {
                let shock_speed = s.u
                    + c * ((g + 1.0) / (2.0 * g) * self.p_star / s.p + (g - 1.0) / (2.0 * g))
                        .sqrt();
                if xi > shock_speed {
                    *s
                } else {
                    PrimState {
                        rho: self.rho_star_right,
                        u: self.u_star,
                        p: self.p_star,
                    }
                }
            } else {
                let c_star = c * (self.p_star / s.p).powf((g - 1.0) / (2.0 * g));
                let head = s.u + c;
                let tail = self.u_star + c_star;
                if xi > head {
                    *s
                } else if xi < tail {
                    PrimState {
                        rho: self.rho_star_right,
                        u: self.u_star,
                        p: self.p_star,
                    }
                } else {
                    let factor = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (s.u - xi);
                    PrimState {
                        rho: s.rho * factor.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (-c + (g - 1.0) / 2.0 * s.u + xi),
                        p: s.p * factor.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        }
    }
}
