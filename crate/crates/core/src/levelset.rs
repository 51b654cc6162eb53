//! Front positions: the diffusive profile predicted by the modified equation
//! of upwind transport, and half-level extraction from discrete fields.

use crate::error::{Error, Result};
use crate::grid::CellField;

/// Parameters of the advection-diffusion profile c_t + u c_x = mu c_xx for a
/// unit step datum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedEqParams {
    pub u: f64,
    pub mu: f64,
    pub t: f64,
}

impl ModifiedEqParams {
    pub fn new(u: f64, mu: f64, t: f64) -> Result<Self> {
        if !u.is_finite() || !mu.is_finite() || !t.is_finite() || mu < 0.0 || t <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "need finite u, mu >= 0, t > 0; got u={u}, mu={mu}, t={t}"
            )));
        }
        Ok(ModifiedEqParams { u, mu, t })
    }

    /// Effective diffusivity of first-order upwind: mu = dx (1 - nu) / 2.
    pub fn upwind(u: f64, dx: f64, nu: f64, t: f64) -> Result<Self> {
        if dx <= 0.0 || !(0.0..=1.0).contains(&nu) {
            return Err(Error::InvalidArgument(format!(
                "need dx > 0 and 0 <= nu <= 1; got dx={dx}, nu={nu}"
            )));
        }
        ModifiedEqParams::new(u, dx * (1.0 - nu) / 2.0, t)
    }
}

/// Normal cumulative distribution via the complementary error function.
fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Solution of the modified equation for a unit step initially at x = 0:
/// Phi((x - u t) / sqrt(2 mu t)). The zero-diffusion limit is the sharp step.
pub fn modified_solution(x: f64, params: &ModifiedEqParams) -> f64 {
    let shifted = x - params.u * params.t;
    if params.mu == 0.0 {
        return if shifted > 0.0 {
            1.0
        } else if shifted < 0.0 {
            0.0
        } else {
            0.5
        };
    }
    normal_cdf(shifted / (2.0 * params.mu * params.t).sqrt())
}

/// All positions where the field crosses the 1/2 level: linear interpolation
/// between cell centers at sign changes of c - 1/2, and the midpoint of any
/// run of cells holding exactly 1/2.
pub fn extract_half_level(c: &CellField) -> Vec<f64> {
    let n = c.n();
    let mut crossings = Vec::new();
    let mut j = 0;
    while j < n {
        if c.values[j] == 0.5 {
            let start = j;
            while j + 1 < n && c.values[j + 1] == 0.5 {
                j += 1;
            }
            let mid = 0.5 * (c.grid.cell_center(start) + c.grid.cell_center(j));
            crossings.push(mid);
            j += 1;
            continue;
        }
        if j + 1 < n {
            let a = c.values[j] - 0.5;
            let b = c.values[j + 1] - 0.5;
            if a * b < 0.0 {
                let x = c.grid.cell_center(j)
                    + c.grid.dx() * (0.5 - c.values[j]) / (c.values[j + 1] - c.values[j]);
                crossings.push(x);
            }
        }
        j += 1;
    }
    crossings
}
