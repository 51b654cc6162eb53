//! Linear one-step advection schemes on the stencil {k-p, ..., k}.
//!
//! The update is c_j' = sum_r alpha_r c_{j+r}. Requiring exactness on
//! polynomials up to degree p makes the weights the Lagrange basis values at
//! the foot point -nu, where nu = u dt / dx is the Courant number.

use crate::error::{Error, Result};
use crate::grid::{Boundary, CellField};
use num_complex::Complex64;

/// Weights alpha_r, r = k-p ..= k, of a (p, k) scheme at Courant number nu.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeCoefficients {
    pub p: usize,
    pub k: usize,
    pub nu: f64,
    /// alphas[i] is the weight of offset r = (k - p) + i.
    pub alphas: Vec<f64>,
}

impl SchemeCoefficients {
    /// Interpolatory weights: the Lagrange basis of the nodes {k-p, ..., k}
    /// evaluated at -nu.
    pub fn new(p: usize, k: usize, nu: f64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidArgument("stencil order p must be >= 1".into()));
        }
        if k > p {
            return Err(Error::InvalidArgument(format!(
                "offset k = {k} must satisfy 0 <= k <= p = {p}"
            )));
        }
        if !nu.is_finite() {
            return Err(Error::InvalidArgument("nu must be finite".into()));
        }
        let lo = k as i64 - p as i64;
        let alphas = (lo..=k as i64)
            .map(|r| {
                let mut w = 1.0;
                for s in lo..=k as i64 {
                    if s != r {
                        w *= (-nu - s as f64) / (r - s) as f64;
                    }
                }
                w
            })
            .collect();
        Ok(SchemeCoefficients { p, k, nu, alphas })
    }

    pub fn upwind(nu: f64) -> Result<Self> {
        SchemeCoefficients::new(1, 0, nu)
    }

    pub fn lax_wendroff(nu: f64) -> Result<Self> {
        SchemeCoefficients::new(2, 1, nu)
    }

    pub fn beam_warming(nu: f64) -> Result<Self> {
        SchemeCoefficients::new(2, 0, nu)
    }

    pub fn third_order(nu: f64) -> Result<Self> {
        SchemeCoefficients::new(3, 1, nu)
    }

    /// Iterate (offset r, weight alpha_r).
    pub fn stencil(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let lo = self.k as i64 - self.p as i64;
        self.alphas.iter().enumerate().map(move |(i, &a)| (lo + i as i64, a))
    }

    /// Residual of the moment condition sum_r alpha_r r^m = (-nu)^m.
    pub fn order_condition_residual(&self, m: u32) -> f64 {
        let lhs: f64 = self.stencil().map(|(r, a)| a * (r as f64).powi(m as i32)).sum();
        let rhs = (-self.nu).powi(m as i32);
        lhs - rhs
    }
}

/// Whether (p, k) belongs to one of the stable families p = 2k, 2k+1, 2k+2.
pub fn is_stable_pair(p: usize, k: usize) -> bool {
    p == 2 * k || p == 2 * k + 1 || p == 2 * k + 2
}

/// The same weights obtained by solving the moment system
/// sum_r alpha_r r^m = (-nu)^m, m = 0..=p, with Gaussian elimination.
/// Kept as an independent cross-check of the product formula.
pub fn vandermonde_coefficients(p: usize, k: usize, nu: f64) -> Result<Vec<f64>> {
    if p < 1 || k > p || !nu.is_finite() {
        return Err(Error::InvalidArgument("need p >= 1, 0 <= k <= p, finite nu".into()));
    }
    let n = p + 1;
    let lo = k as i64 - p as i64;
    // Rows: moments m = 0..=p; columns: nodes r = lo..=k.
    let mut a = vec![vec![0.0; n + 1]; n];
    for (m, row) in a.iter_mut().enumerate() {
        for i in 0..n {
            row[i] = ((lo + i as i64) as f64).powi(m as i32);
        }
        row[n] = (-nu).powi(m as i32);
    }
    // Gaussian elimination with partial pivoting on the augmented system.
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].abs() == 0.0 {
            return Err(Error::InvalidArgument("singular moment system".into()));
        }
        a.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for idx in col..=n {
                a[row][idx] -= factor * a[col][idx];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for idx in row + 1..n {
            acc -= a[row][idx] * x[idx];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

/// One explicit step c_j' = sum_r alpha_r c_{j+r} with periodic indexing.
pub fn step_linear(c: &CellField, scheme: &SchemeCoefficients) -> Result<CellField> {
    if scheme.nu.abs() > 1.0 {
        return Err(Error::CflViolation(format!(
            "|nu| = {} exceeds 1 for explicit stepping",
            scheme.nu.abs()
        )));
    }
    if c.grid.boundary != Boundary::Periodic {
        return Err(Error::InvalidArgument("linear stepping expects a periodic grid".into()));
    }
    let n = c.n() as i64;
    let values = (0..n)
        .map(|j| {
            scheme
                .stencil()
                .map(|(r, a)| a * c.values[(j + r).rem_euclid(n) as usize])
                .sum()
        })
        .collect();
    CellField::new(c.grid.clone(), values)
}

/// Amplification factor g(theta) = sum_r alpha_r e^{i r theta}.
pub fn amplification_factor(scheme: &SchemeCoefficients, theta: f64) -> Complex64 {
    scheme
        .stencil()
        .map(|(r, a)| Complex64::from_polar(a, r as f64 * theta))
        .sum()
}

/// Largest |g(theta)| over `n_theta` equispaced angles in [0, 2 pi).
pub fn max_amplification(scheme: &SchemeCoefficients, n_theta: usize) -> f64 {
    (0..n_theta)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / n_theta as f64;
            amplification_factor(scheme, theta).norm()
        })
        .fold(0.0, f64::max)
}
